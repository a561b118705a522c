#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eoc {

/// Invalid user-supplied configuration (bad dimensions, bad scheme parameters, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Violated internal contract (dimension mismatch between realization and state, ...).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A trajectory produced NaN/Inf. Carries the step index and the seed of the
/// realization that blew up so the run can be reproduced.
struct BlowupError : std::runtime_error {
    long step = -1;
    std::uint64_t seed = 0;
    BlowupError(const std::string& what, long step_idx, std::uint64_t run_seed)
        : std::runtime_error(what), step(step_idx), seed(run_seed) {}
};

/// Bisection bracket does not enclose a sign change.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation at a pole of the boundary sum (z coincides with a diagonal entry).
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Input outside the mathematical domain of an operation (e.g. M_i >= 1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Quadrature or solver failed to reach its tolerance.
struct NumericalError : std::runtime_error {
    double achieved_tol = 0.0;
    explicit NumericalError(const std::string& what, double achieved = 0.0)
        : std::runtime_error(what), achieved_tol(achieved) {}
};

/// Rank-deficient least-squares system with zero regularization.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace eoc
