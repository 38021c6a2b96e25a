// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gft/distribution.hpp"

namespace gft {

// Instance plus the affine map from the file's common support onto [0, 1].
struct LoadedInstance {
  Instance instance;
  AffineMap map;
};

// Distribution object:
//   {"type": "piecewise_linear_cdf", "knots": [[x, q], ...], "support": [lo, hi]}
// "support" is optional; when present the knots live on [lo, hi] and are
// rescaled onto [0, 1]. Unknown fields are rejected with ErrorCode::Parse.
ScaledDistribution parse_distribution(std::string_view json_text);

// Instance object: {"buyer": <distribution>, "seller": <distribution>}. Both
// sides must share one support.
LoadedInstance parse_instance(std::string_view json_text);
LoadedInstance load_instance(const std::filesystem::path& path);

std::string distribution_to_json(const Distribution& d, const AffineMap& map = {});
std::string instance_to_json(const Instance& inst, const AffineMap& map = {});

}  // namespace gft
