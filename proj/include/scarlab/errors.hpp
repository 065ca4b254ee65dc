#pragma once

#include <stdexcept>
#include <string>

namespace scarlab {

// Validation failures: bad arguments, malformed configs, contract violations.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A requested object would exceed the configured memory budget.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configuration violates the blockade (or other basis) constraint.
struct ConstraintViolation : InputError {
    using InputError::InputError;
};

// Operation not available for the given boundary condition / parameters.
struct UnsupportedError : InputError {
    using InputError::InputError;
};

// An iterative method failed to reach its tolerance within the cap.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

// Variational chart degenerates (vanishing norm or singular tangent frame).
struct DegeneratePointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace scarlab
