#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qms {

enum class Errc {
  InvalidArgument,
  NotDivisible,
  ZeroDenominator,
  NoSignChange,
  HypothesisViolated,
  DegenerateConstant,
  ConstantSolution,
  InvariantViolated,
  DomainError,
  NonPositive,
  ZeroInitial,
  BracketLost,
  PrecisionExhausted,
  ZeroProductPivot,
  DimensionTooSmall,
  DimensionMismatch,
  NotHermitian,
  NotUnitary,
  InsufficientRange,
  ConstraintViolated,
};

std::string_view errc_name(Errc code);

// Errors that signal a broken mathematical contract rather than bad input.
bool is_contract_violation(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qms
