#pragma once

#include <stdexcept>
#include <string>

namespace tasaki {

// configuration / CLI problems, CLI exit code 3
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// solver-layer failures, CLI exit code 2
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// more than one Liouvillian zero mode: the steady state is not unique
struct DegenerateSteadyState : SolverError {
    int multiplicity;
    explicit DegenerateSteadyState(int mult)
        : SolverError("degenerate steady state: zero-eigenvalue multiplicity " + std::to_string(mult)),
          multiplicity(mult) {}
};

// no eigenvalue within the null tolerance
struct NoZeroEigenvalue : SolverError {
    using SolverError::SolverError;
};

// trace-constrained system rank-deficient for every candidate row
struct SingularSystem : SolverError {
    using SolverError::SolverError;
};

// time integration aborted (step underflow or invariant violation)
struct IntegratorError : SolverError {
    double last_valid_time;
    IntegratorError(const std::string& what, double t)
        : SolverError(what), last_valid_time(t) {}
};

}  // namespace tasaki
