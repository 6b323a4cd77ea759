#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conicmin {

enum class ErrorCode {
  kSingular,
  kZeroDirection,
  kNonpositiveFactor,
  kDegenerate,
  kNegativeWeight,
  kShapeMismatch,
  kIterationCap,
  kShrinkViolation,
  kEmptyFamily,
  kUnsupportedDimension,
  kTooLarge,
  kParseError,
  kInvalidArgument,
  kInternal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conicmin
