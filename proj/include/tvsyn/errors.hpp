#pragma once

#include <stdexcept>
#include <string>

namespace tvsyn {

enum class ErrorCode {
  IndexOutOfRange,
  SelfLoop,
  DegenerateLineGraph,
  NotConnected,
  TooLarge,
  Singular,
  ConvergenceFailure,
  EmptyComplement,
  RankDeficientBasis,
  TooManySubsets,
  RankZero,
  InversionFailure,
  NotTree,
  BadOrder,
  BadShape,
  LPFailure,
  NotConverged,
  DimensionMismatch,
  RankAssumptionViolated,
  TooManySigns,
  DegenerateDenominator,
  ShapeMismatch,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tvsyn
