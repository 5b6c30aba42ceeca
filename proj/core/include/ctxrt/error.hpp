#pragma once

#include <stdexcept>
#include <string>

namespace ctxrt {

/// Malformed input: bad dimensions, unknown labels, schema violations,
/// parameters out of range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on the mathematical object failed, e.g. a
/// disturbing behavior passed where non-disturbance is required.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration would exceed its configured cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ctxrt
