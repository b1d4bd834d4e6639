#pragma once

#include <stdexcept>
#include <string>

namespace fockstat {

/// Parameters outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a fixed-capacity table.
class CapacityError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The requested evaluation route is singular at these parameters; a
/// different route must be used.
class RouteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncated Fock space is too small for the operator word.
class TruncationRiskError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed sweep specification or command-line input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fockstat
