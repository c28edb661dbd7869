#include "sl2grow/error.hpp"

namespace sl2grow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NonResidue: return "NonResidue";
    case ErrorCode::NoSuchOrder: return "NoSuchOrder";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::NotInSL2: return "NotInSL2";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TableMismatch: return "TableMismatch";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::XInH: return "XInH";
    case ErrorCode::XSquaredNotInH: return "XSquaredNotInH";
    case ErrorCode::OrderTwo: return "OrderTwo";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NoneFound: return "NoneFound";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotCentrallyClosed: return "NotCentrallyClosed";
    case ErrorCode::InterpretationMismatch: return "InterpretationMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
  }
  return "Unknown";
}

}  // namespace sl2grow
