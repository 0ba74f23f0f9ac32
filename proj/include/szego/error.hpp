#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace szego {

enum class ErrorCode {
  InvalidArgument,
  // series
  NonPositiveCapacity,
  CurveSelfIntersects,
  DerivativeVanishes,
  OutsideDomain,
  BadSampleCount,
  DilationNotGreaterThanOne,
  MismatchedTruncation,
  // grunsky
  TruncationTooSmall,
  BranchJumpDetected,
  AliasingDetected,
  NotSymmetric,
  PairingFailed,
  SingularValueAtOne,
  // symbol
  BadLength,
  TruncationExceedsSymbol,
  TruncationExceedsTable,
  // predict
  NotPositiveDefinite,
  NonzeroMean,
  // direct
  NegativeWeight,
  NotConverged,
  ZeroDeterminant,
  GridTooCoarse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI (and tests) can dispatch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace szego
