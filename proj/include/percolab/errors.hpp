#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a step, rejection or size cap is exceeded.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace percolab
