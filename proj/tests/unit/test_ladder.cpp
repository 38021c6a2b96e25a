// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "gft/ladder.hpp"
#include "oracles.hpp"

using gft::Distribution;
using gft::ErrorCode;

namespace {

const Distribution kU = Distribution::uniform();

}  // namespace

TEST(Ladder, MuExamples) {
  EXPECT_NEAR(gft::mu(kU, 0.5, 0.2), 0.6, 1e-12);
  EXPECT_EQ(gft::mu(kU, 0.5, 1.0), 1.0);
  EXPECT_NEAR(gft::mu(kU, 0.311, 0.0), 0.311, 1e-12);
}

TEST(Ladder, MuKExamples) {
  EXPECT_NEAR(gft::mu_k(kU, 0.5, 0.0, 2), 0.75, 1e-12);
  EXPECT_NEAR(gft::mu_k(kU, 0.5, 0.9, -2), 0.6, 1e-12);
  EXPECT_EQ(gft::mu_k(kU, 0.5, 0.5, -2), 0.0);
  EXPECT_EQ(gft::mu_k(kU, 0.5, 0.37, 0), 0.37);
}

TEST(Ladder, BadLambda) {
  using oracle::error_code;
  for (double l : {0.0, 1.0, -0.2, 1.5, std::nan("")}) {
    EXPECT_EQ(error_code([&] { gft::mu(kU, l, 0.2); }), ErrorCode::BadLambda);
    EXPECT_EQ(error_code([&] { gft::mu_k(kU, l, 0.2, 3); }), ErrorCode::BadLambda);
    EXPECT_EQ(error_code([&] { gft::build_ladder(kU, l, 0.2); }), ErrorCode::BadLambda);
  }
}

TEST(Ladder, MuDefiningIdentity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Distribution F = oracle::random_instance(seed).buyer;
    for (double lambda : {0.1, 0.311, 0.5, 0.9}) {
      for (int i = 0; i <= 50; ++i) {
        const double x = i / 50.0;
        const double y = gft::mu(F, lambda, x);
        EXPECT_NEAR(F.cdf(y), lambda + (1 - lambda) * F.cdf(x), 1e-12);
        if (x < 1.0) EXPECT_GT(y, x);
      }
    }
  }
}

TEST(Ladder, CompositionAndInverse) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Distribution F = oracle::random_instance(seed).buyer;
    for (double lambda : {0.25, 0.5}) {
      for (double x : {0.0, 0.2, 0.55, 0.93}) {
        for (int a = 0; a <= 3; ++a) {
          for (int b = 0; b <= 3; ++b) {
            EXPECT_NEAR(gft::mu_k(F, lambda, x, a + b),
                        gft::mu_k(F, lambda, gft::mu_k(F, lambda, x, a), b), 1e-12);
          }
          const double y = gft::mu_k(F, lambda, x, -a);
          if (y > 0.0) EXPECT_NEAR(gft::mu_k(F, lambda, y, a), x, 1e-12);
        }
      }
    }
  }
}

TEST(Ladder, MonotoneInXAndLambda) {
  const Distribution F = oracle::random_instance(4).buyer;
  for (int i = 0; i < 100; ++i) {
    const double x = i / 100.0;
    EXPECT_LE(gft::mu(F, 0.4, x), gft::mu(F, 0.4, x + 0.01));
    EXPECT_LE(gft::mu(F, 0.4, x), gft::mu(F, 0.45, x));
  }
}

TEST(Ladder, BuildLadderUniformFromZero) {
  const auto l = gft::build_ladder(kU, 0.5, 0.0, 1e-3);
  // (1/2)^10 < 1e-3 <= (1/2)^9
  ASSERT_EQ(l.size(), 11u);
  EXPECT_EQ(l.points[0], 0.0);
  EXPECT_NEAR(l.points[1], 0.5, 1e-12);
  EXPECT_NEAR(l.points[2], 0.75, 1e-12);
  EXPECT_NEAR(l.points[3], 0.875, 1e-12);
  EXPECT_LT(l.residual_tail(), 1e-3);
}

TEST(Ladder, BuildLadderUniformFromPointTwo) {
  const auto l = gft::build_ladder(kU, 0.5, 0.2, 0.3);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_NEAR(l.points[1], 0.6, 1e-12);
  EXPECT_NEAR(l.points[2], 0.8, 1e-12);
  EXPECT_NEAR(l.residual_tail(), 0.2, 1e-12);
}

TEST(Ladder, BuildLadderErrors) {
  using oracle::error_code;
  EXPECT_EQ(error_code([] { gft::build_ladder(kU, 0.5, 1.0); }), ErrorCode::DegenerateStart);
  EXPECT_EQ(error_code([] { gft::build_ladder(kU, 0.5, 0.2, 0.9); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_code([] { gft::build_ladder(kU, 0.5, 0.2, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Ladder, TailLawAndLength) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Distribution F = oracle::random_instance(seed).buyer;
    for (double lambda : {0.311, 0.5, 0.8}) {
      for (double c : {0.0, 0.3, 0.7}) {
        for (double eps : {1e-3, 1e-8}) {
          const double tail0 = 1.0 - F.cdf(c);
          const auto l = gft::build_ladder(F, lambda, c, eps);
          for (std::size_t k = 0; k < l.size(); ++k) {
            EXPECT_NEAR(1.0 - F.cdf(l.points[k]), std::pow(1 - lambda, k) * tail0, 1e-12);
            if (k > 0) {
              EXPECT_GT(l.points[k], l.points[k - 1]);
              EXPECT_NEAR(l.interval_mass(k - 1),
                          lambda * std::pow(1 - lambda, k - 1) * tail0, 1e-12);
            }
          }
          const double K = std::ceil(std::log(eps / tail0) / std::log(1 - lambda));
          EXPECT_LE(std::abs(static_cast<double>(l.size() - 1) - K), 1.0);
          EXPECT_LT(l.residual_tail(), eps);
        }
      }
    }
  }
}
