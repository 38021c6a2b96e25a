// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "gft/distribution.hpp"

namespace gft {

// Per-cost terms of the quantile-ladder decomposition, for a seller with
// cost c facing buyer distribution F:
//
//   fb_c = 1/(1-lambda) \int_{mu(c)}^1 (v - c) dF(v)      (upper bound on FB's share)
//   sp_c = (mu(c) - c)(1 - F(mu(c)))                       (profit of posting mu(c))
//   bp_c = \int_{mu^2(c)}^1 (v - mu^{-2}(v)) dF(v)         (utility of posting mu^{-2}(v))
//
// All three are zero at c == 1.
double fb_c(const Distribution& F, double c, double lambda);
double sp_c(const Distribution& F, double c, double lambda);
double bp_c(const Distribution& F, double c, double lambda);

struct BoundTerms {
  double fb = 0.0;
  double sp = 0.0;
  double bp = 0.0;
};
BoundTerms bound_terms(const Distribution& F, double c, double lambda);

// Coefficients (1/(1-lambda), 1/(lambda (1-lambda)^2)) of the pointwise bound
// fb_c <= seller * sp_c + buyer * bp_c.
struct BoundCoefficients {
  double seller = 0.0;
  double buyer = 0.0;
};
BoundCoefficients bound_coefficients(double lambda);

// Exact G-integrals of the three terms over c in [0, 1].
BoundTerms integrate_bound_terms(const Instance& inst, double lambda);

struct BoundRow {
  double c = 0.0;
  double fb_c = 0.0;
  double sp_c = 0.0;
  double bp_c = 0.0;
  double bound_rhs = 0.0;
  double slack = 0.0;  // bound_rhs - fb_c
};

struct BoundReport {
  double lambda = 0.5;
  BoundCoefficients coefficients;
  std::vector<BoundRow> rows;
  BoundTerms aggregate;  // \int fb_c dG, \int sp_c dG, \int bp_c dG
  double min_slack = 0.0;

  // Mechanism values the aggregates are checked against.
  double first_best = 0.0;
  double seller_gft = 0.0;
  double buyer_gft = 0.0;

  bool rows_hold(double tol = 1e-9) const { return min_slack >= -tol; }
  // \int fb_c dG >= FB, \int sp_c dG <= SP, \int bp_c dG <= BP.
  bool aggregates_hold(double tol = 1e-9) const {
    return aggregate.fb >= first_best - tol && aggregate.sp <= seller_gft + tol &&
           aggregate.bp <= buyer_gft + tol;
  }
};

// Rows sit at the G-quantile midpoints (i + 1/2) / c_grid.
BoundReport verify_pointwise(const Instance& inst, double lambda = 0.5, std::size_t c_grid = 100);

// 1/(1-lambda) + 1/(lambda (1-lambda)^2): the max-based factor implied by the
// pointwise bound.
double ratio_bound(double lambda);

struct LambdaOptimum {
  double lambda = 0.0;
  double bound = 0.0;
};
LambdaOptimum optimal_lambda();

// Reflect both distributions through x -> 1 - x and exchange roles. Seller
// pricing on the result is buyer pricing on the input, and FB is unchanged.
Instance swap_roles(const Instance& inst);

// FB / max(SP, BuyerP); 0 when both mechanisms have zero GFT.
double performance_ratio(const Instance& inst);

// Random valid distribution with `knot_budget` knots (endpoints included).
Distribution random_distribution(std::mt19937_64& rng, std::size_t knot_budget);

struct SearchResult {
  Instance instance{Distribution::uniform(), Distribution::uniform()};
  double ratio = 0.0;
  std::size_t best_trial = 0;
  std::vector<double> trial_ratios;
};

struct SearchOptions {
  std::size_t max_sweeps = 40;
  double initial_step = 0.1;
  double min_step = 1.0 / 256.0;
};

// Random-restart coordinate ascent on the knot coordinates of F and G,
// maximizing performance_ratio. Trial 0 starts from the uniform pair; trial t
// draws its start from substream t of `seed`.
SearchResult search_worst_case(std::size_t trials, std::uint64_t seed, std::size_t knot_budget,
                               const SearchOptions& options = {});

}  // namespace gft
