#pragma once

#include <stdexcept>
#include <string>

namespace involution {

// Every failure the library reports derives from Error so callers (the CLI in
// particular) can map families of failures onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DuplicateAlpha : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TooFewCoordinates : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Evaluation outside the domain of an observable (x_i <= 0 under a root).
class DomainError : public Error {
public:
    using Error::Error;
};

// |{phi, Pi}| too small to form a Dirac bracket.
class SingularConstraint : public Error {
public:
    using Error::Error;
};

class DegeneratePoint : public Error {
public:
    using Error::Error;
};

// Failures raised while stepping a trajectory.
class IntegratorError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

class ProjectionFailure : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

// Closed-form quartic solution requested past its blow-up time.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

}  // namespace involution
