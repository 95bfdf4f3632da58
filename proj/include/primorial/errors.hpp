#pragma once

#include <stdexcept>
#include <string>

namespace primlab {

/// Base of every library error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (limit < 2,
/// evaluation point below a validity floor, parity rule violated, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Query beyond what a sieve or table covers.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a configured memory or size ceiling.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The library cannot answer (e.g. a cofactor too large to factor by trial division).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Precondition of a comparison or check does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Persisted data failed validation.
class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace primlab
