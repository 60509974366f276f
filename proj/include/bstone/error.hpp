#pragma once

#include <stdexcept>
#include <string>

namespace bstone {

/// Operands live in different algebras (block structures disagree).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a documented precondition (non-unitary conjugator,
/// non-central projection, excluded exponent, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree numerically did not.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bstone
