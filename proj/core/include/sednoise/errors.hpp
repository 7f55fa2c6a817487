#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sednoise {

/// Input text could not be tokenized (wrong column count, non-numeric field).
/// `line` is 1-based and refers to the offending input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value or structure violates a domain invariant (bad range, unknown clip,
/// inconsistent shapes, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric is undefined for the given inputs (zero reference activity).
class UndefinedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sednoise
