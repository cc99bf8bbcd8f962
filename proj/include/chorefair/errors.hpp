#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chorefair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range items, inconsistent allocations, alpha < 1.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The request exceeds an exhaustive-enumeration bound.
class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

/// An instance does not belong to the function class a solver requires.
class WrongClass : public Error {
 public:
  using Error::Error;
};

/// A runtime invariant of a solver failed. Signals a bug or an input that
/// lies about its declared class.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// JSON input that does not match the schema. `location()` is a JSON pointer
/// or a byte offset into the document.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string location)
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace chorefair
