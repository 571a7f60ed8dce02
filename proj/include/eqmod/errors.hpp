#pragma once

#include <stdexcept>

namespace eqmod {

// Base for every error the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live over different algebra descriptors.
struct IncompatibleAlgebras : Error {
  using Error::Error;
};

// A verifier or bound received a target (a, b, gamma) outside its admissible set.
struct InvalidTarget : Error {
  using Error::Error;
};

// C*-order comparison requested between elements that are not hermitian.
struct OrderUndefined : Error {
  using Error::Error;
};

// Operand outside an operation's domain, e.g. inv_sqrt of a non-positive element.
struct DomainError : Error {
  using Error::Error;
};

// normalize() on a vector whose self inner product is not invertible.
struct CannotNormalize : Error {
  using Error::Error;
};

// A structural theorem hypothesis (e.g. commutativity) is violated by the inputs.
struct HypothesisViolation : Error {
  using Error::Error;
};

// Malformed or inconsistent document text; message carries the location.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace eqmod
