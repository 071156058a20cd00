#pragma once

#include <stdexcept>
#include <string>

namespace ccfinder {

/// Invalid input: parameters or configuration data outside the documented domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two bodies closer than the collision tolerance; the potential is singular there.
class CollisionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Operation requires the center of mass at the origin and it is not.
class NotCenteredError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A divisor in a closed-form mass expression vanished; the value is a pole,
/// not a number.
class SingularDivisorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root search found no sign change inside the expanded bracket.
class NoBracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root refinement failed to bring |F| under tolerance (pole or stalled bracket).
class RootNotConvergedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A located root yields a nonpositive apex mass.
class NonpositiveMassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The curve tracer could not reproduce the known starting solution; this is
/// an implementation failure, not a data condition.
class AnchorFailureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ccfinder
