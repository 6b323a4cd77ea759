#include "conicmin/error.hpp"

namespace conicmin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingular: return "SINGULAR";
    case ErrorCode::kZeroDirection: return "ZERO_DIRECTION";
    case ErrorCode::kNonpositiveFactor: return "NONPOSITIVE_FACTOR";
    case ErrorCode::kDegenerate: return "DEGENERATE";
    case ErrorCode::kNegativeWeight: return "NEGATIVE_WEIGHT";
    case ErrorCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::kIterationCap: return "ITERATION_CAP";
    case ErrorCode::kShrinkViolation: return "SHRINK_VIOLATION";
    case ErrorCode::kEmptyFamily: return "EMPTY_FAMILY";
    case ErrorCode::kUnsupportedDimension: return "UNSUPPORTED_DIMENSION";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kInternal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace conicmin
