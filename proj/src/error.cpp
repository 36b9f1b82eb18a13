#include "shacalc/error.hpp"

namespace shacalc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonBijective: return "NonBijective";
    case ErrorCode::OrderBound: return "OrderBound";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::DescentFailure: return "DescentFailure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::NotFixedModule: return "NotFixedModule";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotGaloisF: return "NotGaloisF";
    case ErrorCode::BadOverride: return "BadOverride";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::NotD4Shape: return "NotD4Shape";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::NotQuarticDomain: return "NotQuarticDomain";
    case ErrorCode::EvenInput: return "EvenInput";
    case ErrorCode::BadBiquadratic: return "BadBiquadratic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace shacalc
