#include "redei/errors.hpp"

namespace redei {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::Zero: return "Zero";
    case ErrorKind::OddClassNumberRequired: return "OddClassNumberRequired";
    case ErrorKind::Unsatisfiable: return "Unsatisfiable";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotLocallySolvable: return "NotLocallySolvable";
    case ErrorKind::TwistSearchExhausted: return "TwistSearchExhausted";
    case ErrorKind::NotDefined: return "NotDefined";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::SearchBudgetExhausted: return "SearchBudgetExhausted";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::InvalidDivisor: return "InvalidDivisor";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::Incomplete: return "Incomplete";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace redei
