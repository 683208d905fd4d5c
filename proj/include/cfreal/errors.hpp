#pragma once

#include <stdexcept>
#include <string>

namespace cfreal {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on alphabet, scalar mode or dimension.
class MismatchError : public Error {
public:
  using Error::Error;
};

/// The requested quantity needs coefficients beyond the known truncation degree.
class InsufficientDegree : public Error {
public:
  using Error::Error;
};

/// Malformed text input; carries 1-based line and column.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Numerical blow-up of a simulated trajectory.
class DivergenceError : public Error {
public:
  using Error::Error;
};

} // namespace cfreal
