// SPDX-License-Identifier: Apache-2.0
#include "gft/mechanisms.hpp"

#include <algorithm>
#include <array>

#include "gft/error.hpp"
#include "piecewise.hpp"

namespace gft {

namespace {

// Payoff improvements below this are treated as ties, which resolve toward
// the smaller price.
constexpr double kTieTol = 1e-15;

void check_unit(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::OutOfSupport, std::string(what) + " outside [0,1]");
  }
}

std::vector<double> merged_knots(const Instance& inst) {
  std::vector<double> breaks;
  detail::append_knots(breaks, inst.buyer);
  detail::append_knots(breaks, inst.seller);
  return detail::normalize_breaks(std::move(breaks));
}

double density_at(const Distribution& d, double t) { return d.slope(d.segment_of_value(t)); }

// --- seller side: maximize (p - c)(1 - F(p)) segment by segment ----------

struct Candidate {
  double price;
  double payoff;
};

Candidate seller_candidate(const Distribution& F, std::size_t j, double c) {
  const Knot& a = F.knots()[j];
  const Knot& b = F.knots()[j + 1];
  const double f = F.slope(j);
  const double vertex = 0.5 * (a.x + c + (1.0 - a.q) / f);
  const double p = std::clamp(vertex, std::max(a.x, c), b.x);
  const double survival = (1.0 - a.q) - f * (p - a.x);
  return {p, (p - c) * survival};
}

// Index of the segment holding the smallest optimal price, -1 if c == 1.
int seller_choice(const Distribution& F, double c) {
  int best = -1;
  double best_payoff = 0.0;
  for (std::size_t j = F.segment_of_value(c); j < F.segment_count(); ++j) {
    if (!(F.knots()[j + 1].x > c)) continue;
    const Candidate cand = seller_candidate(F, j, c);
    if (best < 0 || cand.payoff > best_payoff + kTieTol) {
      best = static_cast<int>(j);
      best_payoff = cand.payoff;
    }
  }
  return best;
}

std::vector<double> seller_breaks(const Instance& inst) {
  const Distribution& F = inst.buyer;
  std::vector<double> breaks;
  detail::append_knots(breaks, F);
  detail::append_knots(breaks, inst.seller);
  for (std::size_t j = 0; j < F.segment_count(); ++j) {
    const Knot& a = F.knots()[j];
    const Knot& b = F.knots()[j + 1];
    const double shift = a.x + (1.0 - a.q) / F.slope(j);
    // Costs at which the unconstrained vertex crosses the segment ends.
    breaks.push_back(2.0 * a.x - shift);
    breaks.push_back(2.0 * b.x - shift);
  }
  return detail::normalize_breaks(std::move(breaks));
}

// --- buyer side: maximize (v - p) G(p) segment by segment ------------------

Candidate buyer_candidate(const Distribution& G, std::size_t j, double v) {
  const Knot& a = G.knots()[j];
  const Knot& b = G.knots()[j + 1];
  const double g = G.slope(j);
  const double vertex = 0.5 * (v + a.x - a.q / g);
  const double p = std::clamp(vertex, a.x, std::min(b.x, v));
  const double mass = a.q + g * (p - a.x);
  return {p, (v - p) * mass};
}

int buyer_choice(const Distribution& G, double v) {
  int best = -1;
  double best_payoff = 0.0;
  for (std::size_t j = 0; j < G.segment_count(); ++j) {
    if (!(G.knots()[j].x < v)) break;
    const Candidate cand = buyer_candidate(G, j, v);
    if (best < 0 || cand.payoff > best_payoff + kTieTol) {
      best = static_cast<int>(j);
      best_payoff = cand.payoff;
    }
  }
  return best;
}

std::vector<double> buyer_breaks(const Instance& inst) {
  const Distribution& G = inst.seller;
  std::vector<double> breaks;
  detail::append_knots(breaks, inst.buyer);
  detail::append_knots(breaks, G);
  for (std::size_t j = 0; j < G.segment_count(); ++j) {
    const Knot& a = G.knots()[j];
    const Knot& b = G.knots()[j + 1];
    const double shift = a.q / G.slope(j) - a.x;
    breaks.push_back(2.0 * a.x + shift);
    breaks.push_back(2.0 * b.x + shift);
  }
  return detail::normalize_breaks(std::move(breaks));
}

}  // namespace

double first_best(const Instance& inst) {
  const std::vector<double> breaks = merged_knots(inst);
  const auto h = [&](double t) {
    return inst.seller.cdf(t) * (1.0 - inst.buyer.cdf(t));
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    // The integrand is quadratic between merged knots: Simpson is exact.
    sum += (b - a) / 6.0 * (h(a) + 4.0 * h(0.5 * (a + b)) + h(b));
  }
  return sum;
}

double fixed_price_gft(const Instance& inst, double price) {
  check_unit(price, "price");
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;
  return G.cdf(price) * F.partial_expectation(price, 1.0) -
         (1.0 - F.cdf(price)) * G.partial_expectation(0.0, price);
}

FixedPriceOutcome fixed_price(const Instance& inst) {
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;
  const std::vector<double> breaks = merged_knots(inst);

  FixedPriceOutcome best{fixed_price_gft(inst, 0.0), 0.0, 0.0};
  const auto consider = [&](double p) {
    const double gft = fixed_price_gft(inst, p);
    if (gft > best.gft + kTieTol) best = {gft, p, 0.0};
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    // Between merged knots the cubic terms cancel and GFT(p) is a concave
    // quadratic: GFT'(p) = g A(a) + f B(a) - (f G(a) + g (1 - F(a))) p with
    // A(a) = \int_a^1 v dF and B(a) = \int_0^a c dG.
    const double mid = 0.5 * (a + b);
    const double f = density_at(F, mid);
    const double g = density_at(G, mid);
    const double curvature = f * G.cdf(a) + g * (1.0 - F.cdf(a));
    if (curvature > 0.0) {
      const double p = (g * F.partial_expectation(a, 1.0) + f * G.partial_expectation(0.0, a)) / curvature;
      if (p > a && p < b) consider(p);
    }
    consider(b);
  }
  best.trade_probability = G.cdf(best.price) * (1.0 - F.cdf(best.price));
  return best;
}

PriceResponse seller_best_response(const Distribution& F, double cost) {
  check_unit(cost, "cost");
  const int j = seller_choice(F, cost);
  if (j < 0) return {1.0, 0.0};
  const Candidate cand = seller_candidate(F, static_cast<std::size_t>(j), cost);
  return {cand.price, cand.payoff};
}

double seller_optimal_price(const Distribution& F, double cost) {
  return seller_best_response(F, cost).price;
}

PriceResponse buyer_best_response(const Distribution& G, double value) {
  check_unit(value, "value");
  const int j = buyer_choice(G, value);
  if (j < 0) return {0.0, 0.0};
  const Candidate cand = buyer_candidate(G, static_cast<std::size_t>(j), value);
  return {cand.price, cand.payoff};
}

double buyer_optimal_price(const Distribution& G, double value) {
  return buyer_best_response(G, value).price;
}

SellerPricingOutcome seller_pricing(const Instance& inst, std::size_t curve_points) {
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;

  const auto choose = [&](double c) { return seller_choice(F, c); };
  const auto value = [&](double c, int id) -> std::array<double, 2> {
    if (id < 0) return {0.0, 0.0};
    const Candidate cand = seller_candidate(F, static_cast<std::size_t>(id), c);
    const double g = density_at(G, c);
    const double gft = F.partial_expectation(cand.price, 1.0) - c * (1.0 - F.cdf(cand.price));
    return {g * gft, g * cand.payoff};
  };

  std::array<double, 2> total{};
  const std::vector<double> breaks = seller_breaks(inst);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    detail::accumulate(total, detail::integrate_switching<2>(breaks[i], breaks[i + 1],
                                                             choose, value));
  }

  SellerPricingOutcome out{total[0], total[1], {}};
  for (std::size_t i = 0; i < curve_points; ++i) {
    const double c = curve_points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(curve_points - 1);
    out.price_curve.push_back({c, seller_optimal_price(F, c)});
  }
  return out;
}

BuyerPricingOutcome buyer_pricing(const Instance& inst, std::size_t curve_points) {
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;

  const auto choose = [&](double v) { return buyer_choice(G, v); };
  const auto value = [&](double v, int id) -> std::array<double, 2> {
    if (id < 0) return {0.0, 0.0};
    const Candidate cand = buyer_candidate(G, static_cast<std::size_t>(id), v);
    const double f = density_at(F, v);
    const double gft = v * G.cdf(cand.price) - G.partial_expectation(0.0, cand.price);
    return {f * gft, f * cand.payoff};
  };

  std::array<double, 2> total{};
  const std::vector<double> breaks = buyer_breaks(inst);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    detail::accumulate(total, detail::integrate_switching<2>(breaks[i], breaks[i + 1],
                                                             choose, value));
  }

  BuyerPricingOutcome out{total[0], total[1], {}};
  for (std::size_t i = 0; i < curve_points; ++i) {
    const double v = curve_points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(curve_points - 1);
    out.price_curve.push_back({v, buyer_optimal_price(G, v)});
  }
  return out;
}

MixtureOutcome mixture(const Instance& inst, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::BadAlpha, "mixture weight must lie in [0,1]");
  }
  MixtureOutcome out;
  out.alpha = alpha;
  out.seller_gft = seller_pricing(inst, 0).gft;
  out.buyer_gft = buyer_pricing(inst, 0).gft;
  out.gft = alpha * out.seller_gft + (1.0 - alpha) * out.buyer_gft;
  return out;
}

}  // namespace gft
