// SPDX-License-Identifier: Apache-2.0
#include "gft/second_best.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gft/error.hpp"

namespace gft {

namespace {

void validate_side(const std::vector<double>& types, const std::vector<double>& probs,
                   const char* side) {
  const std::string who(side);
  if (types.empty() || types.size() != probs.size()) {
    throw Error(ErrorCode::InvalidArgument, who + " types and masses must be non-empty and aligned");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!(types[i] >= 0.0 && types[i] <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, who + " type outside [0,1]");
    }
    if (i > 0 && !(types[i] > types[i - 1])) {
      throw Error(ErrorCode::NonMonotone, who + " types must be strictly increasing");
    }
    if (!(probs[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, who + " masses must be positive");
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, who + " masses must sum to 1");
  }
}

std::vector<double> midpoints(const Distribution& d, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = d.quantile((2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(count)));
  }
  return out;
}

}  // namespace

void DiscreteInstance::validate() const {
  validate_side(values, value_probs, "buyer");
  validate_side(costs, cost_probs, "seller");
}

DiscreteInstance discretize(const Instance& inst, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "grid sizes must be positive");
  DiscreteInstance d;
  d.values = midpoints(inst.buyer, n);
  d.value_probs.assign(n, 1.0 / static_cast<double>(n));
  d.costs = midpoints(inst.seller, m);
  d.cost_probs.assign(m, 1.0 / static_cast<double>(m));
  return d;
}

SecondBestLp build_lp(const DiscreteInstance& d) {
  d.validate();
  SecondBestLp lp;
  lp.instance = d;
  const std::size_t n = d.n();
  const std::size_t m = d.m();
  LpModel& model = lp.model;

  const auto cell_name = [](const char* prefix, std::size_t i, std::size_t j) {
    return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double weight = d.value_probs[i] * d.cost_probs[j];
      model.add_variable(cell_name("x", i, j), 0.0, 1.0, weight * (d.values[i] - d.costs[j]));
    }
  }
  for (const char* prefix : {"pb", "ps"}) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        model.add_variable(cell_name(prefix, i, j), -kPaymentBound, kPaymentBound);
      }
    }
  }

  // Buyer of type i reporting i2: sum_j g_j (v_i x_{i2,j} - pb_{i2,j}).
  const auto buyer_utility = [&](std::size_t i, std::size_t i2, double sign,
                                 std::vector<LpTerm>& terms) {
    for (std::size_t j = 0; j < m; ++j) {
      terms.push_back({lp.x(i2, j), sign * d.cost_probs[j] * d.values[i]});
      terms.push_back({lp.pb(i2, j), -sign * d.cost_probs[j]});
    }
  };
  // Seller of type j reporting j2: sum_i f_i (ps_{i,j2} - c_j x_{i,j2}).
  const auto seller_utility = [&](std::size_t j, std::size_t j2, double sign,
                                  std::vector<LpTerm>& terms) {
    for (std::size_t i = 0; i < n; ++i) {
      terms.push_back({lp.ps(i, j2), sign * d.value_probs[i]});
      terms.push_back({lp.x(i, j2), -sign * d.value_probs[i] * d.costs[j]});
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (i == i2) continue;
      LpRow row{"bic_b_" + std::to_string(i) + "_" + std::to_string(i2), {}};
      buyer_utility(i, i, 1.0, row.terms);
      buyer_utility(i, i2, -1.0, row.terms);
      model.add_row(std::move(row));
      ++lp.buyer_bic_rows;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t j2 = 0; j2 < m; ++j2) {
      if (j == j2) continue;
      LpRow row{"bic_s_" + std::to_string(j) + "_" + std::to_string(j2), {}};
      seller_utility(j, j, 1.0, row.terms);
      seller_utility(j, j2, -1.0, row.terms);
      model.add_row(std::move(row));
      ++lp.seller_bic_rows;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    LpRow row{"ir_b_" + std::to_string(i), {}};
    buyer_utility(i, i, 1.0, row.terms);
    model.add_row(std::move(row));
    ++lp.buyer_ir_rows;
  }
  for (std::size_t j = 0; j < m; ++j) {
    LpRow row{"ir_s_" + std::to_string(j), {}};
    seller_utility(j, j, 1.0, row.terms);
    model.add_row(std::move(row));
    ++lp.seller_ir_rows;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      model.add_row({cell_name("wbb", i, j), {{lp.pb(i, j), 1.0}, {lp.ps(i, j), -1.0}}});
      ++lp.wbb_rows;
    }
  }
  return lp;
}

const char* to_string(SbStatus status) noexcept {
  switch (status) {
    case SbStatus::Optimal: return "optimal";
    case SbStatus::Infeasible: return "infeasible";
    case SbStatus::UnboundedGuard: return "unbounded-guard";
  }
  return "unknown";
}

std::vector<double> SBSolution::interim_buyer_trade(const DiscreteInstance& d) const {
  std::vector<double> out(d.n(), 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.m(); ++j) out[i] += d.cost_probs[j] * trade[i * d.m() + j];
  }
  return out;
}

SBSolution solve_lp(const SecondBestLp& lp, const SimplexOptions& options) {
  const LpSolution raw = solve_lp(lp.model, options);
  SBSolution sol;
  sol.iterations = raw.iterations;
  switch (raw.status) {
    case LpStatus::Optimal: sol.status = SbStatus::Optimal; break;
    case LpStatus::Infeasible: sol.status = SbStatus::Infeasible; return sol;
    case LpStatus::Unbounded: sol.status = SbStatus::UnboundedGuard; return sol;
  }
  const std::size_t cells = lp.cells();
  const auto slice = [&](std::size_t from) {
    return std::vector<double>(raw.values.begin() + static_cast<std::ptrdiff_t>(from),
                               raw.values.begin() + static_cast<std::ptrdiff_t>(from + cells));
  };
  sol.trade = slice(0);
  sol.buyer_pays = slice(cells);
  sol.seller_receives = slice(2 * cells);
  sol.sb = raw.objective;
  sol.max_violation = max_violation(lp.model, raw.values);
  return sol;
}

std::string export_lp(const SecondBestLp& lp) {
  std::ostringstream comment;
  comment << "second-best bilateral trade LP, " << lp.instance.n() << " buyer types x "
          << lp.instance.m() << " seller types";
  return export_lp(lp.model, comment.str());
}

DiscreteBenchmarks discrete_benchmarks(const DiscreteInstance& d) {
  d.validate();
  DiscreteBenchmarks out;
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t j = 0; j < d.m(); ++j) {
      out.fb += d.value_probs[i] * d.cost_probs[j] * std::max(d.values[i] - d.costs[j], 0.0);
    }
  }
  // Seller of cost c_j posts one of the buyer values (or prices out of the
  // market); smallest maximizer on ties.
  for (std::size_t j = 0; j < d.m(); ++j) {
    double best_profit = 0.0;
    std::size_t best = d.n();
    for (std::size_t k = 0; k < d.n(); ++k) {
      double demand = 0.0;
      for (std::size_t i = k; i < d.n(); ++i) demand += d.value_probs[i];
      const double profit = (d.values[k] - d.costs[j]) * demand;
      if (profit > best_profit + 1e-15) {
        best_profit = profit;
        best = k;
      }
    }
    for (std::size_t i = best; i < d.n(); ++i) {
      out.sp += d.cost_probs[j] * d.value_probs[i] * (d.values[i] - d.costs[j]);
    }
  }
  for (std::size_t i = 0; i < d.n(); ++i) {
    double best_utility = 0.0;
    std::size_t best = d.m();
    for (std::size_t k = 0; k < d.m(); ++k) {
      double supply = 0.0;
      for (std::size_t j = 0; j <= k; ++j) supply += d.cost_probs[j];
      const double utility = (d.values[i] - d.costs[k]) * supply;
      if (utility > best_utility + 1e-15) {
        best_utility = utility;
        best = k;
      }
    }
    if (best == d.m()) continue;
    for (std::size_t j = 0; j <= best; ++j) {
      out.bp += d.value_probs[i] * d.cost_probs[j] * (d.values[i] - d.costs[j]);
    }
  }
  return out;
}

bool SecondBestResult::sandwich_holds(double tol) const {
  const double floor = std::max(benchmarks.sp, benchmarks.bp);
  return solution.sb >= floor - tol && solution.sb <= benchmarks.fb + tol;
}

SecondBestResult second_best(const Instance& inst, std::size_t n, std::size_t m,
                             const SimplexOptions& options) {
  SecondBestResult out;
  out.instance = discretize(inst, n, m);
  const SecondBestLp lp = build_lp(out.instance);
  out.solution = solve_lp(lp, options);
  out.benchmarks = discrete_benchmarks(out.instance);
  return out;
}

}  // namespace gft
