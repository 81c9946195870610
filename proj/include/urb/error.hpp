#pragma once

#include <stdexcept>
#include <string>

namespace urb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied arguments does not hold
/// (e.g. a non-prime modulus, an empty interval with y > x).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input: integers, rationals, set files.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A property that the constructions guarantee was found violated.
/// This always indicates a bug; `witness()` carries the offending data.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& what, std::string witness)
      : Error(what + (witness.empty() ? "" : ": " + witness)), witness_(std::move(witness)) {}
  explicit InvariantViolation(const std::string& what) : Error(what) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// A Sidon set of the requested size is not dense enough for the requested ratio.
class DensityShortfall : public Error {
 public:
  using Error::Error;
};

/// The computation needs more than the configured resource budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace urb
