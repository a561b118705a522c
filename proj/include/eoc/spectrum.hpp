#pragma once

// Direct spectral check of the linearization J = diag(M) + g diag(L) U diag(R):
// the origin loses stability when the spectral radius of J crosses 1.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "eoc/criterion.hpp"
#include "eoc/disorder.hpp"
#include "eoc/sweep.hpp"
#include "eoc/types.hpp"

namespace eoc {

struct JacobianMatrix {
    Mat j;
    double g = 0.0;
    std::uint64_t seed = 0;
    Arch arch = Arch::Lstm;
};

/// Builds the Jacobian of the update at the origin fixed point. Requires a
/// zero candidate bias (s_c = 0): with a candidate bias the origin is not a
/// fixed point and this linearization is meaningless.
JacobianMatrix build_jacobian(const DisorderRealization& d, const ArchitectureSpec& arch,
                              double g);

struct RadiusEstimate {
    double radius = 0.0;
    bool converged = false;
    int matvecs = 0;  // total matrix-vector products spent
};

/// Largest eigenvalue modulus by power iteration with random restarts.
/// Dominant complex pairs are handled by fitting the two-step recurrence
/// x_{k+2} = a x_{k+1} + b x_k and taking the root modulus. Returns the max
/// over restarts; `converged` is false if the winning restart was still
/// drifting after max_iters matvecs.
RadiusEstimate spectral_radius(const Mat& j, double tol = 1e-8, int max_iters = 5000,
                               int restarts = 8, std::uint64_t seed = 0x5eed);

/// Mean +- CI of the spectral radius per gain over independent replicas.
/// Columns: g, radius_mean, radius_ci95, n, replicas.
SweepResult radius_vs_gain_sweep(const NetworkConfig& config, std::span<const double> g_grid,
                                 int replicas);

/// Full eigenvalue set (dense solver); guarded to n <= 300, best effort.
std::vector<std::complex<double>> eigenvalues_dense(const Mat& j);

}  // namespace eoc
