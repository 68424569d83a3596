#include "qms/error.hpp"

namespace qms {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::DegenerateConstant: return "DegenerateConstant";
    case Errc::ConstantSolution: return "ConstantSolution";
    case Errc::InvariantViolated: return "InvariantViolated";
    case Errc::DomainError: return "DomainError";
    case Errc::NonPositive: return "NonPositive";
    case Errc::ZeroInitial: return "ZeroInitial";
    case Errc::BracketLost: return "BracketLost";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ZeroProductPivot: return "ZeroProductPivot";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::InsufficientRange: return "InsufficientRange";
    case Errc::ConstraintViolated: return "ConstraintViolated";
  }
  return "Unknown";
}

bool is_contract_violation(Errc code) {
  switch (code) {
    case Errc::NotDivisible:
    case Errc::InvariantViolated:
    case Errc::BracketLost:
    case Errc::PrecisionExhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace qms
