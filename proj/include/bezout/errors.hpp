#pragma once

#include <stdexcept>
#include <string>

namespace bezout {

// Caller broke a precondition: mixed rings, zero generator, bad flag combination.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical invariant failed to hold. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bezout
