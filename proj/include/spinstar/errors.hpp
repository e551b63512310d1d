#pragma once

#include <stdexcept>
#include <string>

namespace spinstar {

/// Quantum number or parameter outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller combined arguments in a way the operation does not support.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested computation exceeds a hard size limit; raised before any work starts.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical data violates a physical invariant (non-Hermitian, non-PSD, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace spinstar
