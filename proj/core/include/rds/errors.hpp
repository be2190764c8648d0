#pragma once

#include <stdexcept>
#include <string>

namespace rds {

/// Input outside the domain of an operation (endpoint of (0,1), tol <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A map description that does not define an increasing homeomorphism.
class InvalidMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A perturbation construction failed its own verification.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed system file, bundle or descriptor.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rds
