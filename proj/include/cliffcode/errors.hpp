#pragma once

#include <stdexcept>
#include <string>

namespace cliffcode {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad group spec, unparsable label, malformed file,
/// precondition on arguments violated. The CLI maps these to exit code 1.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation could not be completed: a cap was exceeded, a numerical
/// split could not be certified exactly, an internal consistency check
/// failed. The CLI maps these to exit code 2.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace cliffcode
