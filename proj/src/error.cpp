// SPDX-License-Identifier: Apache-2.0
#include "gft/error.hpp"

namespace gft {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::BadEndpoints: return "BadEndpoints";
    case ErrorCode::TooFewKnots: return "TooFewKnots";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::DegenerateTruncation: return "DegenerateTruncation";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::BadLambda: return "BadLambda";
    case ErrorCode::DegenerateStart: return "DegenerateStart";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::UnknownMechanism: return "UnknownMechanism";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace gft
