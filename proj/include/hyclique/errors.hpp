#pragma once

#include <stdexcept>
#include <string>

namespace hyclique {

/// Malformed input or parameters outside an operation's domain.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input is well-formed but does not satisfy the hypothesis an operation
/// needs (for instance a family that is not intersecting).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked mathematical property failed. Seeing one of these on valid input
/// means there is a bug somewhere.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation(what);
}

}  // namespace hyclique
