#pragma once

#include <stdexcept>
#include <string>

namespace apexforge {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or retry budget ran out before the operation could finish.
/// The CLI maps this to exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A recomputation disagreed with a stored or claimed value (exit code 1).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace apexforge
