#pragma once

#include <stdexcept>
#include <string>

namespace sltk {

/// Argument outside the mathematical domain of an operation (e.g. x not in [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a documented precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel did not meet its tolerance contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalue bracketing exhausted its expansion budget.
class SearchError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Boundary condition / backend pairing that has no implementation.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input; carries a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

}  // namespace sltk
