#pragma once

#include <stdexcept>
#include <string>

namespace rotinv {

/// An argument lies outside the mathematical domain of an operation
/// (bad qubit index, wrong parity of a sector label, odd l, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An input violates a documented precondition that is a property of its
/// value rather than its type, e.g. an operator that is not rotationally
/// invariant.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested size exceeds a dense-matrix cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed external input (JSON files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact computation produced a value that contradicts a known identity.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rotinv
