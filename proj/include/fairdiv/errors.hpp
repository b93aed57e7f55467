#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Thrown when an argument violates a model condition (bad witness, invalid
/// valuation, unknown agent, malformed scenario, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when an exhaustive routine refuses an instance that is too large.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fairdiv
