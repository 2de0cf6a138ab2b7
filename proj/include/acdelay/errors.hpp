#pragma once

#include <stdexcept>
#include <string>

namespace acdelay {

// Bad input: malformed spec files, probabilities that do not sum to one,
// letters outside the alphabet. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An argument outside the mathematical domain of an operation.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Exhaustive enumeration would exceed its node budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A delay bound was requested for a source without a decay certificate.
class UncertifiedSource : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace acdelay
