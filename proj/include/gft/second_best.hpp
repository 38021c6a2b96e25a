// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gft/distribution.hpp"
#include "gft/lp.hpp"

namespace gft {

// Finite-support bilateral trade instance. Types are strictly increasing in
// [0, 1]; masses are positive and sum to 1.
struct DiscreteInstance {
  std::vector<double> values;
  std::vector<double> value_probs;
  std::vector<double> costs;
  std::vector<double> cost_probs;

  std::size_t n() const noexcept { return values.size(); }
  std::size_t m() const noexcept { return costs.size(); }

  // Throws InvalidArgument when the invariants fail.
  void validate() const;
};

// Buyer types at the quantile midpoints F^{-1}((2i - 1) / 2n), each with mass
// 1/n; sellers likewise with G and m.
DiscreteInstance discretize(const Instance& inst, std::size_t n, std::size_t m);

// GFT-maximizing LP over trade probabilities x_ij and ex-post payments
// pb_ij (buyer pays), ps_ij (seller receives), with interim BIC and IR for
// both sides and ex-post weak budget balance pb_ij >= ps_ij.
struct SecondBestLp {
  LpModel model;
  DiscreteInstance instance;
  std::size_t buyer_bic_rows = 0;
  std::size_t seller_bic_rows = 0;
  std::size_t buyer_ir_rows = 0;
  std::size_t seller_ir_rows = 0;
  std::size_t wbb_rows = 0;

  std::size_t x(std::size_t i, std::size_t j) const { return i * instance.m() + j; }
  std::size_t pb(std::size_t i, std::size_t j) const { return cells() + x(i, j); }
  std::size_t ps(std::size_t i, std::size_t j) const { return 2 * cells() + x(i, j); }
  std::size_t cells() const { return instance.n() * instance.m(); }
};

// Payment boxes guarding against unbounded directions in degenerate bases.
inline constexpr double kPaymentBound = 2.0;

SecondBestLp build_lp(const DiscreteInstance& d);

enum class SbStatus { Optimal, Infeasible, UnboundedGuard };

const char* to_string(SbStatus status) noexcept;

struct SBSolution {
  SbStatus status = SbStatus::Optimal;
  double sb = 0.0;
  // Row-major n x m.
  std::vector<double> trade;
  std::vector<double> buyer_pays;
  std::vector<double> seller_receives;
  double max_violation = 0.0;
  std::size_t iterations = 0;

  // Interim trade probability of buyer type i: sum_j g_j x_ij.
  std::vector<double> interim_buyer_trade(const DiscreteInstance& d) const;
};

SBSolution solve_lp(const SecondBestLp& lp, const SimplexOptions& options = {});

std::string export_lp(const SecondBestLp& lp);

// Discrete counterparts of the continuous benchmarks. SP_d and BP_d come
// from exhaustive search over posted prices on the opposite side's grid.
struct DiscreteBenchmarks {
  double fb = 0.0;
  double sp = 0.0;
  double bp = 0.0;
};

DiscreteBenchmarks discrete_benchmarks(const DiscreteInstance& d);

struct SecondBestResult {
  DiscreteInstance instance;
  SBSolution solution;
  DiscreteBenchmarks benchmarks;

  // max(SP_d, BP_d) - tol <= sb <= FB_d + tol.
  bool sandwich_holds(double tol = 1e-7) const;
};

SecondBestResult second_best(const Instance& inst, std::size_t n, std::size_t m,
                             const SimplexOptions& options = {});

}  // namespace gft
