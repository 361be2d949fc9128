#pragma once

#include <stdexcept>
#include <string>

namespace qcontext {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// Input violates a value invariant (non-normalized state, non-unit
/// direction, invalid density operator, ...).
class InvalidValueError : public Error {
 public:
  using Error::Error;
};

/// Input falls outside the case an operation is defined for.
class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcontext
