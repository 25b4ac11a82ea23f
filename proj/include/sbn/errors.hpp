// Exception types shared across the library. The CLI maps these onto exit codes.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate a precondition (e.g. clades of different
// widths).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Two clades that overlap or are empty were combined into a subsplit.
class InvalidSubsplitError : public Error {
 public:
  using Error::Error;
};

// A child subsplit does not refine either part of its parent.
class IncompatibleError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. Line and column are 1-based; zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, size_t line, size_t column)
      : Error(Format(message, line, column)), line_(line), column_(column) {}

  size_t Line() const { return line_; }
  size_t Column() const { return column_; }

 private:
  static std::string Format(const std::string &message, size_t line, size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
           message;
  }

  size_t line_;
  size_t column_;
};

// Well-formed input that is semantically unacceptable (taxa mismatch, unnormalized
// distribution, empty sample, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested beyond the configured taxon cap.
class CapExceededError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Something that must hold mathematically did not; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbn
