#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssvar {

enum class ErrorCode {
  NotNormalized,
  NotHermitian,
  NotPositive,
  BadShape,
  BadDimension,
  BadRank,
  DimensionMismatch,
  DimensionTooLarge,
  SameIndex,
  DegenerateObservable,
  BadProbabilities,
  BadDecomposition,
  RankMismatch,
  NotIsometry,
  BadConfig,
  BadBloch,
  NumericalFailure,
};

std::string_view to_string(ErrorCode code);

/// Every precondition or invariant violation in the library surfaces as an
/// Error. what() names the violated invariant and the offending magnitude.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Non-fatal numerical notices (clamped variances and the like). The default
// handler writes to stderr; set an empty function to silence.
using WarningHandler = void (*)(std::string_view);
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace ssvar
