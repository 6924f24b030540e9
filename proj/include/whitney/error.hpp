#pragma once

#include <stdexcept>
#include <string>

namespace whitney {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: invalid exponent, mode/size mismatch, malformed interval family.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Repeated (or numerically indistinguishable) abscissae.
class DuplicatePoints : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Fewer data points than the operation needs.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A computation that could not reach the requested accuracy.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace whitney
