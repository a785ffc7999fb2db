#pragma once

#include <stdexcept>
#include <string>

namespace eulerlab {

// Evaluation left the real domain of a solution family: a pole in t, a
// non-positive power-law base, an interpolation query outside a path's
// range, or an ODE interval touching a singular point.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double final_residual, int iteration_count)
        : std::runtime_error(what), residual(final_residual), iterations(iteration_count) {}

    double residual = 0.0;
    int iterations = 0;
};

// File read/write failure; message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace eulerlab
