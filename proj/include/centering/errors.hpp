#ifndef CENTERING_ERRORS_HPP
#define CENTERING_ERRORS_HPP

#include <stdexcept>

namespace centering {

// Violated mathematical precondition: bad exponent, alpha outside (0,1),
// unnormalized weights, invalid partition, length mismatch.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input document (JSON shape, missing fields).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not produce a trustworthy answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace centering

#endif  // CENTERING_ERRORS_HPP
