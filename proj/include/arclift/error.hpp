#pragma once

#include <stdexcept>
#include <string>

namespace arclift {

enum class ErrorKind {
  FieldMismatch,
  NotAUnit,
  NotDivisible,
  PrecisionExhausted,
  ParseError,
  UnknownVariable,
  MissingVariable,
  NamespaceMismatch,
  InvalidProblem,
  OrderTooHigh,
  OrderViolation,
  IdentityFailed,
  NoProgress,
  NotStrict,
  OutOfFamily,
  BudgetExceeded,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace arclift
