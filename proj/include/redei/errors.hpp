#pragma once

#include <stdexcept>
#include <string>

namespace redei {

enum class ErrorKind {
  BudgetExceeded,
  NotASquare,
  Zero,
  OddClassNumberRequired,
  Unsatisfiable,
  PrecisionExhausted,
  NotLocallySolvable,
  TwistSearchExhausted,
  NotDefined,
  NotOnCurve,
  SearchBudgetExhausted,
  BadReduction,
  InvalidDivisor,
  Inconclusive,
  Incomplete,
  InternalInconsistency,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace redei
