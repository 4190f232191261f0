#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bushdx {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value outside the domain of an operation (negative concentration, rank > 100, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Supplied redundant data disagrees with what was derived from it.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Arithmetic result not representable.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Shapes, sizes or required members do not line up.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (zero epochs, empty input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Training cannot proceed on the given data (e.g. a single class).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Input file is malformed beyond per-row recovery.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Rule DSL error carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace bushdx
