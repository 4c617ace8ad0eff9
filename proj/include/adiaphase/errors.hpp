#pragma once

#include <stdexcept>
#include <string>

namespace adiaphase {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: malformed paths, grid mismatches, out-of-range times.
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// A physical precondition of the adiabatic construction failed at `time()`.
class PhysicsError : public Error {
public:
    PhysicsError(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Instantaneous spectrum (nearly) degenerate.
class NonDegenerateViolation : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// Consecutive eigenvectors overlap too weakly to be continued; refine the grid.
class GaugeContinuationError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace adiaphase
