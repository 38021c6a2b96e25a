// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gft/distribution.hpp"

namespace gft {

// mu(x) = F^{-1}(lambda + (1 - lambda) F(x)): the point above x that leaves a
// (1 - lambda) share of F's mass above x still above it. lambda = 1/2 gives
// the conditional median.
double mu(const Distribution& F, double lambda, double x);

// k-fold composition for k > 0, identity for k == 0. For k < 0 returns the
// preimage under |k| compositions, or 0 when none exists.
//
// Compositions are done in tail-probability space, (1 - F) -> (1 - lambda)^k (1 - F),
// with one quantile inversion at the end.
double mu_k(const Distribution& F, double lambda, double x, int k);

// Points c = p_0 < p_1 < ... < p_K with p_{k+1} = mu(p_k).
struct QuantileLadder {
  double lambda = 0.5;
  double start = 0.0;
  double truncation_eps = 1e-12;
  std::vector<double> points;
  // tails[k] = 1 - F(points[k]).
  std::vector<double> tails;

  std::size_t size() const noexcept { return points.size(); }
  // F-mass of [points[k], points[k+1]); for the last point, the residual tail.
  double interval_mass(std::size_t k) const {
    return k + 1 < tails.size() ? tails[k] - tails[k + 1] : tails[k];
  }
  double residual_tail() const { return tails.back(); }
};

// Generates points until the residual tail 1 - F(p_K) drops below eps.
// Requires c in [0, 1) and 0 < eps < 1 - F(c).
QuantileLadder build_ladder(const Distribution& F, double lambda, double c, double eps = 1e-12);

void check_lambda(double lambda);

}  // namespace gft
