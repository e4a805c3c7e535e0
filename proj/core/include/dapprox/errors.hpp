#pragma once

#include <stdexcept>
#include <string>

namespace dapprox {

/// Raised when a caller violates an operation's precondition. The CLI maps
/// this to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration was requested beyond its configured ceiling.
class ThresholdExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace dapprox
