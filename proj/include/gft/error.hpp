// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gft {

// Numeric values are part of the C ABI (see gft.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  NonMonotone = 1,
  BadEndpoints = 2,
  TooFewKnots = 3,
  OutOfSupport = 4,
  OutOfRange = 5,
  BadRange = 6,
  DegenerateTruncation = 7,
  DegenerateSupport = 8,
  BadLambda = 9,
  DegenerateStart = 10,
  BadAlpha = 11,
  UnknownMechanism = 12,
  NumericalInstability = 13,
  InvalidArgument = 14,
  Parse = 15,
  Io = 16,
  Internal = 17,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gft
