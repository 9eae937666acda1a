#pragma once

#include <stdexcept>
#include <string>

namespace xyent {

/// Input outside the validity domain of an operation (bad gamma, negative
/// field, oracle size limits, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to produce a trustworthy answer.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace xyent
