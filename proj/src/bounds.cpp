// SPDX-License-Identifier: Apache-2.0
#include "gft/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "gft/error.hpp"
#include "gft/ladder.hpp"
#include "gft/mechanisms.hpp"
#include "piecewise.hpp"

namespace gft {

namespace {

// Returns false when c == 1, where every term vanishes.
bool check_cost(double c, double lambda) {
  check_lambda(lambda);
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfSupport, "cost outside [0,1]");
  return c < 1.0;
}

}  // namespace

double fb_c(const Distribution& F, double c, double lambda) {
  if (!check_cost(c, lambda)) return 0.0;
  const double m = mu(F, lambda, c);
  return (F.partial_expectation(m, 1.0) - c * (1.0 - F.cdf(m))) / (1.0 - lambda);
}

double sp_c(const Distribution& F, double c, double lambda) {
  if (!check_cost(c, lambda)) return 0.0;
  const double m = mu(F, lambda, c);
  return (m - c) * (1.0 - F.cdf(m));
}

double bp_c(const Distribution& F, double c, double lambda) {
  if (!check_cost(c, lambda)) return 0.0;
  // Substituting u = F(v) and then w = F(mu^{-2}(v)) turns
  // \int_{mu^2(c)}^1 mu^{-2}(v) dF(v) into (1-lambda)^2 \int_c^1 x dF(x).
  const double m2 = mu_k(F, lambda, c, 2);
  const double shrink = (1.0 - lambda) * (1.0 - lambda);
  return F.partial_expectation(m2, 1.0) - shrink * F.partial_expectation(c, 1.0);
}

BoundTerms bound_terms(const Distribution& F, double c, double lambda) {
  return {fb_c(F, c, lambda), sp_c(F, c, lambda), bp_c(F, c, lambda)};
}

BoundCoefficients bound_coefficients(double lambda) {
  check_lambda(lambda);
  const double rest = 1.0 - lambda;
  return {1.0 / rest, 1.0 / (lambda * rest * rest)};
}

BoundTerms integrate_bound_terms(const Instance& inst, double lambda) {
  check_lambda(lambda);
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;

  // Within a piece, c, mu(c) and mu^2(c) each stay inside one F segment and
  // G's density is constant, so every term is a quadratic in c.
  std::vector<double> breaks;
  detail::append_knots(breaks, F);
  detail::append_knots(breaks, G);
  for (const Knot& k : F.knots()) {
    for (int j = 1; j <= 2; ++j) {
      const double q = 1.0 - (1.0 - k.q) / std::pow(1.0 - lambda, j);
      if (q >= 0.0) breaks.push_back(F.quantile(q));
    }
  }
  breaks = detail::normalize_breaks(std::move(breaks));

  std::array<double, 3> total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    detail::accumulate(total, detail::gauss3<3>(breaks[i], breaks[i + 1], [&](double c) {
      const double g = G.slope(G.segment_of_value(c));
      const BoundTerms t = bound_terms(F, c, lambda);
      return std::array<double, 3>{g * t.fb, g * t.sp, g * t.bp};
    }));
  }
  return {total[0], total[1], total[2]};
}

BoundReport verify_pointwise(const Instance& inst, double lambda, std::size_t c_grid) {
  check_lambda(lambda);
  if (c_grid < 2) throw Error(ErrorCode::InvalidArgument, "c grid needs at least two points");

  BoundReport report;
  report.lambda = lambda;
  report.coefficients = bound_coefficients(lambda);
  report.rows.reserve(c_grid);
  report.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c_grid; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(c_grid);
    BoundRow row;
    row.c = inst.seller.quantile(q);
    const BoundTerms t = bound_terms(inst.buyer, row.c, lambda);
    row.fb_c = t.fb;
    row.sp_c = t.sp;
    row.bp_c = t.bp;
    row.bound_rhs = report.coefficients.seller * t.sp + report.coefficients.buyer * t.bp;
    row.slack = row.bound_rhs - row.fb_c;
    report.min_slack = std::min(report.min_slack, row.slack);
    report.rows.push_back(row);
  }
  report.aggregate = integrate_bound_terms(inst, lambda);
  report.first_best = first_best(inst);
  report.seller_gft = seller_pricing(inst, 0).gft;
  report.buyer_gft = buyer_pricing(inst, 0).gft;
  return report;
}

double ratio_bound(double lambda) {
  const BoundCoefficients k = bound_coefficients(lambda);
  return k.seller + k.buyer;
}

LambdaOptimum optimal_lambda() {
  // g is strictly convex on (0, 1); Brent converges to well below 1e-6.
  const auto [lambda, bound] = boost::math::tools::brent_find_minima(
      [](double l) { return ratio_bound(l); }, 1e-3, 1.0 - 1e-3, 40);
  return {lambda, bound};
}

Instance swap_roles(const Instance& inst) {
  return {inst.seller.reflected(), inst.buyer.reflected()};
}

double performance_ratio(const Instance& inst) {
  const double fb = first_best(inst);
  const double best = std::max(seller_pricing(inst, 0).gft, buyer_pricing(inst, 0).gft);
  return best > 0.0 ? fb / best : 0.0;
}

}  // namespace gft
