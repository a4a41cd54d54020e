// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace stlmon {

/// Raised by the specification parser; carries 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Malformed trace input (CSV shape, non-uniform sampling, arity, ...).
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Access past the end of a prefix; the signal is not defined there yet.
class BeyondPrefixError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Access to a sample that has been dropped by history eviction.
class EvictedError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A monitor was stepped with a view that does not extend the previous one
/// by exactly one sample.
class NonContiguousStepError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stlmon
