// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "gft/distribution.hpp"

namespace gft {

// A posted price and the poster's expected payoff at it: the seller's profit
// (p - c)(1 - F(p)) or the buyer's utility (v - p) G(p).
struct PriceResponse {
  double price = 0.0;
  double payoff = 0.0;
};

struct PricePoint {
  double type;   // cost c for seller pricing, value v for buyer pricing
  double price;
};

struct FixedPriceOutcome {
  double gft = 0.0;
  double price = 0.0;
  double trade_probability = 0.0;
};

struct SellerPricingOutcome {
  double gft = 0.0;
  double profit = 0.0;  // expected seller profit under r_c
  std::vector<PricePoint> price_curve;
};

struct BuyerPricingOutcome {
  double gft = 0.0;
  double utility = 0.0;  // expected buyer utility under r'_v
  std::vector<PricePoint> price_curve;
};

struct MixtureOutcome {
  double gft = 0.0;
  double alpha = 0.0;  // probability of running seller pricing
  double seller_gft = 0.0;
  double buyer_gft = 0.0;
};

// E[(v - c) 1{v >= c}], evaluated as \int G(t) (1 - F(t)) dt.
double first_best(const Instance& inst);

// Best single price p, trading iff c <= p <= v. Smallest maximizer on ties.
FixedPriceOutcome fixed_price(const Instance& inst);

// GFT of the fixed-price mechanism at a given price.
double fixed_price_gft(const Instance& inst, double price);

// Smallest maximizer of (p - c)(1 - F(p)) over p in [c, 1].
PriceResponse seller_best_response(const Distribution& F, double cost);
double seller_optimal_price(const Distribution& F, double cost);

// Smallest maximizer of (v - p) G(p) over p in [0, v].
PriceResponse buyer_best_response(const Distribution& G, double value);
double buyer_optimal_price(const Distribution& G, double value);

// Outer integrals are split at every point where the optimal price changes
// regime, so each piece integrates a low-degree polynomial exactly.
SellerPricingOutcome seller_pricing(const Instance& inst, std::size_t curve_points = 101);
BuyerPricingOutcome buyer_pricing(const Instance& inst, std::size_t curve_points = 101);

// Seller pricing with probability alpha, buyer pricing otherwise.
MixtureOutcome mixture(const Instance& inst, double alpha);

}  // namespace gft
