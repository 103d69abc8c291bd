#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frobcount {

enum class ErrorKind {
  ExponentOverflow,
  NotDivisible,
  DomainMismatch,
  ZeroPolynomial,
  ConstantPolynomial,
  BadReduction,
  NotPrime,
  TooLarge,
  DivisionByZero,
  NonInversiveCoefficients,
  BudgetExceeded,
  UnassignedParameter,
  NotOnVariety,
  InvalidArgument,
  Syntax,
  UndeclaredSymbol,
  SigmaDepthExceeded,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error thrown by the library. The kind is stable and is what
/// callers (and the CLI exit-code mapping) should dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A diagnostic from the system-file parser. Lines and columns are 1-based.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, std::string message,
             std::vector<std::string> expected = {});

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::vector<std::string> expected_;
};

}  // namespace frobcount
