// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gft/bounds.hpp"
#include "gft/mechanisms.hpp"
#include "oracles.hpp"

using gft::Distribution;
using gft::Instance;

namespace {

const Instance kU{Distribution::uniform(), Distribution::uniform()};

double seller_profit(const oracle::Knots& F, double c, double p) {
  return (p - c) * (1.0 - oracle::cdf(F, p));
}

double buyer_utility(const oracle::Knots& G, double v, double p) {
  return (v - p) * oracle::cdf(G, p);
}

// Midpoint rule in G-quantile space of the seller-pricing GFT at cost c,
// using the library's price but an independent surplus formula.
double seller_gft_oracle(const Instance& inst, std::size_t N) {
  const oracle::Knots F = oracle::knots_of(inst.buyer);
  const oracle::Knots G = oracle::knots_of(inst.seller);
  double sum = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double c = oracle::quantile(G, (j + 0.5) / N);
    const double r = gft::seller_optimal_price(inst.buyer, c);
    sum += oracle::partial_expectation(F, r, 1.0) - c * (1.0 - oracle::cdf(F, r));
  }
  return sum / static_cast<double>(N);
}

double buyer_gft_oracle(const Instance& inst, std::size_t N) {
  const oracle::Knots F = oracle::knots_of(inst.buyer);
  const oracle::Knots G = oracle::knots_of(inst.seller);
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double v = oracle::quantile(F, (i + 0.5) / N);
    const double r = gft::buyer_optimal_price(inst.seller, v);
    sum += v * oracle::cdf(G, r) - oracle::partial_expectation(G, 0.0, r);
  }
  return sum / static_cast<double>(N);
}

}  // namespace

TEST(Mechanisms, UniformClosedForms) {
  EXPECT_NEAR(gft::first_best(kU), 1.0 / 6.0, 1e-12);
  const auto fixed = gft::fixed_price(kU);
  EXPECT_NEAR(fixed.price, 0.5, 1e-9);
  EXPECT_NEAR(fixed.gft, 0.125, 1e-12);
  EXPECT_NEAR(fixed.trade_probability, 0.25, 1e-12);
  const auto sp = gft::seller_pricing(kU);
  EXPECT_NEAR(sp.gft, 0.125, 1e-12);
  EXPECT_NEAR(sp.profit, 1.0 / 12.0, 1e-12);
  const auto bp = gft::buyer_pricing(kU);
  EXPECT_NEAR(bp.gft, 0.125, 1e-12);
  EXPECT_NEAR(bp.utility, 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(gft::mixture(kU, 0.5).gft, 0.125, 1e-12);
}

TEST(Mechanisms, FirstBestLimits) {
  // F concentrated near 1, G near 0.
  const Distribution high({{0, 0}, {0.99, 0.001}, {1, 1}});
  const Distribution low({{0, 0}, {0.01, 0.999}, {1, 1}});
  EXPECT_NEAR(gft::first_best({high, low}), high.mean() - low.mean(), 1e-4);
  EXPECT_LT(gft::first_best({low, high}), 1e-4);
}

TEST(Mechanisms, FirstBestMatchesOracles) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    const auto F = oracle::knots_of(inst.buyer);
    const auto G = oracle::knots_of(inst.seller);
    EXPECT_NEAR(gft::first_best(inst), oracle::first_best(F, G), 1e-9);
    EXPECT_NEAR(gft::first_best(inst), oracle::first_best_quantile_grid(F, G, 1500), 2e-3);
  }
}

TEST(Mechanisms, SellerOptimalPriceExamples) {
  const Distribution u = Distribution::uniform();
  EXPECT_NEAR(gft::seller_optimal_price(u, 0.2), 0.6, 1e-12);
  EXPECT_NEAR(gft::seller_optimal_price(u, 0.0), 0.5, 1e-12);
  const auto top = gft::seller_best_response(u, 1.0);
  EXPECT_EQ(top.price, 1.0);
  EXPECT_EQ(top.payoff, 0.0);
}

TEST(Mechanisms, BuyerOptimalPriceExamples) {
  const Distribution u = Distribution::uniform();
  EXPECT_NEAR(gft::buyer_optimal_price(u, 0.8), 0.4, 1e-12);
  EXPECT_NEAR(gft::buyer_optimal_price(u, 1.0), 0.5, 1e-12);
  const auto bottom = gft::buyer_best_response(u, 0.0);
  EXPECT_EQ(bottom.price, 0.0);
  EXPECT_EQ(bottom.payoff, 0.0);
}

TEST(Mechanisms, BestResponsesBeatGrids) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    const auto F = oracle::knots_of(inst.buyer);
    const auto G = oracle::knots_of(inst.seller);
    for (int i = 0; i < 100; ++i) {
      const double t = (i + 0.5) / 100.0;
      const auto s = gft::seller_best_response(inst.buyer, t);
      EXPECT_GE(s.price, t);
      EXPECT_NEAR(s.payoff, seller_profit(F, t, s.price), 1e-12);
      const auto b = gft::buyer_best_response(inst.seller, t);
      EXPECT_LE(b.price, t);
      EXPECT_NEAR(b.payoff, buyer_utility(G, t, b.price), 1e-12);
      for (int k = 0; k < 100; ++k) {
        const double p = (k + 0.5) / 100.0;
        EXPECT_GE(s.payoff, seller_profit(F, t, p) - 1e-12);
        EXPECT_GE(b.payoff, buyer_utility(G, t, p) - 1e-12);
      }
    }
  }
}

TEST(Mechanisms, OptimizersMatchDenseArgmax) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    const auto F = oracle::knots_of(inst.buyer);
    const auto G = oracle::knots_of(inst.seller);
    for (double t : {0.05, 0.3, 0.62, 0.9}) {
      const auto s = gft::seller_best_response(inst.buyer, t);
      const auto sg = oracle::grid_argmax([&](double p) { return seller_profit(F, t, p); }, 0, 1,
                                          10001, oracle::xs(F));
      EXPECT_GE(s.payoff, sg.value - 1e-12);
      EXPECT_LE(s.payoff - sg.value, 1e-6);
      const auto b = gft::buyer_best_response(inst.seller, t);
      const auto bg = oracle::grid_argmax([&](double p) { return buyer_utility(G, t, p); }, 0, 1,
                                          10001, oracle::xs(G));
      EXPECT_GE(b.payoff, bg.value - 1e-12);
      EXPECT_LE(b.payoff - bg.value, 1e-6);
    }
    const auto fixed = gft::fixed_price(inst);
    std::vector<double> kinks = oracle::xs(F);
    for (double x : oracle::xs(G)) kinks.push_back(x);
    const auto fg = oracle::grid_argmax([&](double p) { return gft::fixed_price_gft(inst, p); }, 0, 1,
                                        10001, kinks);
    EXPECT_GE(fixed.gft, fg.value - 1e-12);
    EXPECT_LE(fixed.gft - fg.value, 1e-6);
    // Independent fixed-price surplus at the chosen price.
    const double p = fixed.price;
    const double direct = oracle::cdf(G, p) * oracle::partial_expectation(F, p, 1.0) -
                          (1.0 - oracle::cdf(F, p)) * oracle::partial_expectation(G, 0.0, p);
    EXPECT_NEAR(fixed.gft, direct, 1e-12);
  }
}

TEST(Mechanisms, SellerResponseOnBimodalBuyer) {
  // Profit p (1 - F(p)) has a local peak on each outer segment.
  const Distribution F({{0, 0}, {0.25, 0.2}, {0.75, 0.8}, {1, 1}});
  const auto s = gft::seller_best_response(F, 0.0);
  const auto grid = oracle::grid_argmax(
      [&](double p) { return p * (1.0 - F.cdf(p)); }, 0.0, 1.0, 100001);
  EXPECT_NEAR(s.payoff, grid.value, 1e-9);
  EXPECT_NEAR(s.price, grid.arg, 1e-5);
}

TEST(Mechanisms, PricingGftMatchesQuadrature) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    EXPECT_NEAR(gft::seller_pricing(inst).gft, seller_gft_oracle(inst, 4000), 2e-4);
    EXPECT_NEAR(gft::buyer_pricing(inst).gft, buyer_gft_oracle(inst, 4000), 2e-4);
  }
}

TEST(Mechanisms, Ordering) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    const double fb = gft::first_best(inst);
    const auto fixed = gft::fixed_price(inst);
    const auto sp = gft::seller_pricing(inst);
    const auto bp = gft::buyer_pricing(inst);
    EXPECT_LE(fixed.gft, fb + 1e-9);
    EXPECT_LE(sp.gft, fb + 1e-9);
    EXPECT_LE(bp.gft, fb + 1e-9);
    EXPECT_GE(fixed.gft, 0.0);
    EXPECT_GE(sp.gft, sp.profit - 1e-12);
    EXPECT_GE(sp.profit, 0.0);
    EXPECT_GE(bp.gft, bp.utility - 1e-12);
    EXPECT_GE(bp.utility, 0.0);
    EXPECT_GE(fixed.trade_probability, 0.0);
    EXPECT_LE(fixed.trade_probability, 1.0);
    // FB <= 2 SP + 8 BP and FB <= 10 max(SP, BP).
    EXPECT_LE(fb, 2 * sp.gft + 8 * bp.gft + 1e-9);
    EXPECT_LE(fb, 10 * std::max(sp.gft, bp.gft) + 1e-9);
  }
}

TEST(Mechanisms, BuyerPricingMirrorsSellerPricing) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = oracle::random_instance(seed);
    const Instance mirrored = gft::swap_roles(inst);
    EXPECT_NEAR(gft::buyer_pricing(inst).gft, gft::seller_pricing(mirrored).gft, 1e-9);
    EXPECT_NEAR(gft::buyer_pricing(inst).utility, gft::seller_pricing(mirrored).profit, 1e-12);
  }
}

TEST(Mechanisms, McAfeeIid) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Distribution d = oracle::random_instance(seed).buyer;
    const Instance iid{d, d};
    EXPECT_GE(gft::fixed_price(iid).gft, gft::first_best(iid) / 2 - 1e-12);
  }
}

TEST(Mechanisms, MhrSellerPricing) {
  EXPECT_GE(gft::seller_pricing(kU).gft, gft::first_best(kU) / std::numbers::e);
}

TEST(Mechanisms, Mixture) {
  const Instance inst = oracle::random_instance(3);
  const double sp = gft::seller_pricing(inst).gft;
  const double bp = gft::buyer_pricing(inst).gft;
  EXPECT_EQ(gft::mixture(inst, 1.0).gft, sp);
  EXPECT_EQ(gft::mixture(inst, 0.0).gft, bp);
  EXPECT_NEAR(gft::mixture(inst, 0.3).gft, 0.3 * sp + 0.7 * bp, 1e-15);
  for (double a : {-0.1, 1.1, std::nan("")}) {
    EXPECT_EQ(oracle::error_code([&] { gft::mixture(inst, a); }), gft::ErrorCode::BadAlpha);
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance r = oracle::random_instance(seed);
    for (double a : {0.2, 0.5, 0.8}) {
      EXPECT_GE(10 * gft::mixture(r, a).gft, gft::first_best(r) - 1e-9);
    }
  }
}

TEST(Mechanisms, PriceCurves) {
  const auto sp = gft::seller_pricing(kU, 11);
  ASSERT_EQ(sp.price_curve.size(), 11u);
  for (const auto& pt : sp.price_curve) EXPECT_NEAR(pt.price, (1 + pt.type) / 2, 1e-12);
  const auto bp = gft::buyer_pricing(kU, 11);
  for (const auto& pt : bp.price_curve) EXPECT_NEAR(pt.price, pt.type / 2, 1e-12);
}
