// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gft/distribution.hpp"

namespace gft {

enum class MechanismKind { FirstBest, Fixed, Seller, Buyer, Mixture };

struct MechanismSpec {
  MechanismKind kind = MechanismKind::Fixed;
  double alpha = 0.5;  // mixture only
};

// "first-best", "fixed", "seller", "buyer", "mixture" (alpha 0.5) or
// "mixture:<alpha>". Throws UnknownMechanism.
MechanismSpec parse_mechanism(std::string_view text);
std::string to_string(const MechanismSpec& spec);

struct SimReport {
  MechanismSpec mechanism;
  std::size_t n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double analytic = 0.0;
  double z = 0.0;
  double trade_frequency = 0.0;
  // Trades where the buyer paid a different amount than the seller received.
  std::size_t budget_violations = 0;
  // Trades with v < price or c > price.
  std::size_t ir_violations = 0;

  bool flagged(double threshold = 4.0) const { return !(std::abs(z) <= threshold); }
};

// Draws n independent (v, c) pairs and plays the mechanism's trade rule
// literally, with prices from the analytic optimizers.
//
// Samples come in batches of kBatchSize; batch b draws values, costs and
// mixture coins from substreams 3b, 3b + 1 and 3b + 2 of `seed`, so every
// mechanism simulated with the same seed sees the same (v, c) pairs.
SimReport simulate(const Instance& inst, const MechanismSpec& mechanism, std::size_t n,
                   std::uint64_t seed);

inline constexpr std::size_t kBatchSize = 1 << 16;

// First best, fixed price, seller pricing, buyer pricing and the 50/50
// mixture, on common random numbers.
std::vector<SimReport> cross_validate(const Instance& inst, std::size_t n, std::uint64_t seed);

}  // namespace gft
