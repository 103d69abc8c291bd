#include "frobcount/error.hpp"

#include <sstream>

namespace frobcount {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonInversiveCoefficients: return "NonInversiveCoefficients";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnassignedParameter: return "UnassignedParameter";
    case ErrorKind::NotOnVariety: return "NotOnVariety";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::SigmaDepthExceeded: return "SigmaDepthExceeded";
  }
  return "Unknown";
}

namespace {

std::string format_parse_error(std::size_t line, std::size_t column, const std::string& message,
                               const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
      out << expected[i];
    }
    out << ")";
  }
  return out.str();
}

}  // namespace

ParseError::ParseError(ErrorKind kind, std::size_t line, std::size_t column, std::string message,
                       std::vector<std::string> expected)
    : Error(kind, format_parse_error(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

}  // namespace frobcount
