// SPDX-License-Identifier: Apache-2.0
#include "gft/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <random>

#include "gft/error.hpp"
#include "gft/mechanisms.hpp"
#include "gft/rng.hpp"

namespace gft {

MechanismSpec parse_mechanism(std::string_view text) {
  if (text == "first-best" || text == "fb") return {MechanismKind::FirstBest, 0.5};
  if (text == "fixed") return {MechanismKind::Fixed, 0.5};
  if (text == "seller") return {MechanismKind::Seller, 0.5};
  if (text == "buyer") return {MechanismKind::Buyer, 0.5};
  if (text == "mixture") return {MechanismKind::Mixture, 0.5};
  constexpr std::string_view prefix = "mixture:";
  if (text.starts_with(prefix)) {
    const std::string_view rest = text.substr(prefix.size());
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), alpha);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
      throw Error(ErrorCode::UnknownMechanism, "bad mixture weight in '" + std::string(text) + "'");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw Error(ErrorCode::BadAlpha, "mixture weight must lie in [0,1]");
    }
    return {MechanismKind::Mixture, alpha};
  }
  throw Error(ErrorCode::UnknownMechanism, "unknown mechanism '" + std::string(text) + "'");
}

std::string to_string(const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismKind::FirstBest: return "first-best";
    case MechanismKind::Fixed: return "fixed";
    case MechanismKind::Seller: return "seller";
    case MechanismKind::Buyer: return "buyer";
    case MechanismKind::Mixture: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "mixture:%.17g", spec.alpha);
      return buf;
    }
  }
  return "unknown";
}

namespace {

double analytic_value(const Instance& inst, const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismKind::FirstBest: return first_best(inst);
    case MechanismKind::Fixed: return fixed_price(inst).gft;
    case MechanismKind::Seller: return seller_pricing(inst, 0).gft;
    case MechanismKind::Buyer: return buyer_pricing(inst, 0).gft;
    case MechanismKind::Mixture: return mixture(inst, spec.alpha).gft;
  }
  throw Error(ErrorCode::UnknownMechanism, "unknown mechanism");
}

}  // namespace

SimReport simulate(const Instance& inst, const MechanismSpec& mechanism, std::size_t n,
                   std::uint64_t seed) {
  if (n < 1000) throw Error(ErrorCode::InvalidArgument, "simulation needs at least 1000 samples");
  if (mechanism.kind == MechanismKind::Mixture && !(mechanism.alpha >= 0.0 && mechanism.alpha <= 1.0)) {
    throw Error(ErrorCode::BadAlpha, "mixture weight must lie in [0,1]");
  }
  const Distribution& F = inst.buyer;
  const Distribution& G = inst.seller;

  SimReport report;
  report.mechanism = mechanism;
  report.n = n;
  report.analytic = analytic_value(inst, mechanism);
  const double fixed = mechanism.kind == MechanismKind::Fixed ? fixed_price(inst).price : 0.0;

  double mean = 0.0;
  double m2 = 0.0;
  std::size_t trades = 0;
  std::size_t seen = 0;
  for (std::size_t batch = 0; seen < n; ++batch) {
    std::mt19937_64 value_rng(substream_seed(seed, 3 * batch));
    std::mt19937_64 cost_rng(substream_seed(seed, 3 * batch + 1));
    std::mt19937_64 coin_rng(substream_seed(seed, 3 * batch + 2));
    const std::size_t count = std::min(kBatchSize, n - seen);
    for (std::size_t s = 0; s < count; ++s) {
      const double v = F.quantile(uniform01(value_rng));
      const double c = G.quantile(uniform01(cost_rng));
      const double coin = uniform01(coin_rng);

      MechanismKind kind = mechanism.kind;
      if (kind == MechanismKind::Mixture) {
        kind = coin < mechanism.alpha ? MechanismKind::Seller : MechanismKind::Buyer;
      }
      bool trade = false;
      double price = 0.0;
      switch (kind) {
        case MechanismKind::FirstBest:
          trade = v >= c;
          break;
        case MechanismKind::Fixed:
          price = fixed;
          trade = v >= price && c <= price;
          break;
        case MechanismKind::Seller:
          price = seller_optimal_price(F, c);
          trade = v >= price;
          break;
        case MechanismKind::Buyer:
          price = buyer_optimal_price(G, v);
          trade = c <= price;
          break;
        case MechanismKind::Mixture:
          break;
      }

      double surplus = 0.0;
      if (trade) {
        surplus = v - c;
        ++trades;
        if (kind != MechanismKind::FirstBest) {
          const double buyer_pays = price;
          const double seller_receives = price;
          if (buyer_pays != seller_receives) ++report.budget_violations;
          if (v < price || c > price) ++report.ir_violations;
        }
      }
      ++seen;
      const double delta = surplus - mean;
      mean += delta / static_cast<double>(seen);
      m2 += delta * (surplus - mean);
    }
  }

  report.mean = mean;
  report.stderr_ = std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  report.trade_frequency = static_cast<double>(trades) / static_cast<double>(n);
  const double diff = report.mean - report.analytic;
  report.z = report.stderr_ > 0.0 ? diff / report.stderr_ : (diff == 0.0 ? 0.0 : std::copysign(1e300, diff));
  return report;
}

std::vector<SimReport> cross_validate(const Instance& inst, std::size_t n, std::uint64_t seed) {
  std::vector<SimReport> out;
  for (MechanismKind kind : {MechanismKind::FirstBest, MechanismKind::Fixed, MechanismKind::Seller,
                             MechanismKind::Buyer, MechanismKind::Mixture}) {
    out.push_back(simulate(inst, {kind, 0.5}, n, seed));
  }
  return out;
}

}  // namespace gft
