#include "eoc/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "eoc/stats.hpp"

namespace eoc {

namespace {

/// One power-iteration run; returns (modulus estimate, converged, matvecs used).
RadiusEstimate power_run(const Mat& j, Vec v, double tol, int max_matvecs) {
    RadiusEstimate res;
    const double nv = v.norm();
    if (nv == 0.0) return res;
    v /= nv;
    double prev_est = -1.0;
    int stable = 0;
    Vec x1(v.size()), x2(v.size());
    while (res.matvecs + 2 <= max_matvecs) {
        x1.noalias() = j * v;
        x2.noalias() = j * x1;
        res.matvecs += 2;
        // Least-squares fit x2 ~ a x1 + b v; dominant eigenvalues are roots of
        // mu^2 = a mu + b.
        const double g11 = x1.squaredNorm(), g01 = v.dot(x1), g00 = 1.0;
        const double r1 = x1.dot(x2), r0 = v.dot(x2);
        const double det = g11 * g00 - g01 * g01;
        double est;
        if (det > 1e-28 * g11) {
            const double a = (g00 * r1 - g01 * r0) / det;
            const double b = (g11 * r0 - g01 * r1) / det;
            const double disc = a * a + 4.0 * b;
            est = (disc >= 0.0)
                      ? std::max(std::abs(0.5 * (a + std::sqrt(disc))),
                                 std::abs(0.5 * (a - std::sqrt(disc))))
                      : std::sqrt(-b);
        } else {
            // x1 parallel to v: v is numerically an eigenvector.
            est = std::sqrt(g11);
        }
        const double n2 = x2.norm();
        if (n2 == 0.0) {
            res.radius = 0.0;
            res.converged = true;
            return res;
        }
        v = x2 / n2;
        if (std::abs(est - prev_est) <= tol * std::max(1.0, std::abs(est))) {
            if (++stable >= 3) {
                res.radius = est;
                res.converged = true;
                return res;
            }
        } else {
            stable = 0;
        }
        prev_est = est;
        res.radius = est;
    }
    return res;
}

}  // namespace

JacobianMatrix build_jacobian(const DisorderRealization& d, const ArchitectureSpec& arch,
                              double g) {
    if (!d.candidate_bias_is_zero())
        throw ContractError(
            "jacobian at the origin requires a zero candidate bias (s_c = 0); with s_c != 0 "
            "the origin is not a fixed point");
    const DiagonalTriple t = extract_mlr(d, arch);
    JacobianMatrix jm;
    jm.g = g;
    jm.seed = d.seed;
    jm.arch = d.arch;
    // phi'(0), psi'(0) enter as scalar factors on L and R; both are 1 for the
    // shipped activations.
    const double geff = g * arch.phi_prime0() * arch.psi_prime0();
    jm.j = geff * (t.l.asDiagonal() * d.u * t.r.asDiagonal());
    jm.j.diagonal() += t.m;
    return jm;
}

RadiusEstimate spectral_radius(const Mat& j, double tol, int max_iters, int restarts,
                               std::uint64_t seed) {
    if (j.rows() != j.cols() || j.rows() < 1) throw ContractError("square matrix required");
    if (!j.allFinite()) throw ContractError("matrix has non-finite entries");
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
    const int n = static_cast<int>(j.rows());
    RadiusEstimate best;
    bool first = true;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) {
        GaussianStream gs(seed, "power.restart." + std::to_string(r));
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = gs.next();
        const RadiusEstimate est = power_run(j, v, tol, max_iters);
#pragma omp critical
        {
            if (first || est.radius > best.radius) {
                const int acc = best.matvecs;
                best = est;
                best.matvecs += acc;
                first = false;
            } else {
                best.matvecs += est.matvecs;
            }
        }
    }
    return best;
}

SweepResult radius_vs_gain_sweep(const NetworkConfig& config, std::span<const double> g_grid,
                                 int replicas) {
    config.validate();
    if (g_grid.empty()) throw ConfigError("empty gain grid");
    if (replicas < 1) throw ConfigError("replicas must be >= 1");

    const auto spec = config.spec();
    std::vector<std::vector<double>> radii(g_grid.size(),
                                           std::vector<double>(static_cast<std::size_t>(replicas)));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicas; ++r) {
        try {
            NetworkConfig cfg = config;
            cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
            const auto d = realize(cfg);
            const DiagonalTriple t = extract_mlr(d, spec);
            // J(g) = diag(M) + g B with B fixed per realization.
            const Mat b = t.l.asDiagonal() * d.u * t.r.asDiagonal();
            for (std::size_t gi = 0; gi < g_grid.size(); ++gi) {
                Mat j = g_grid[gi] * b;
                j.diagonal() += t.m;
                radii[gi][static_cast<std::size_t>(r)] =
                    spectral_radius(j, 1e-8, 5000, 8, derive_seed(cfg.seed, 0xEADu)).radius;
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult sweep;
    sweep.columns = {"g", "radius_mean", "radius_ci95", "n", "replicas"};
    for (std::size_t gi = 0; gi < g_grid.size(); ++gi) {
        const auto ci = mean_ci95(radii[gi]);
        sweep.rows.push_back({g_grid[gi], ci.mean, ci.ci95_halfwidth,
                              static_cast<double>(config.n), static_cast<double>(replicas)});
    }
    sweep.meta["arch"] = to_string(config.arch);
    sweep.meta["n"] = std::to_string(config.n);
    sweep.meta["replicas"] = std::to_string(replicas);
    sweep.meta["seed"] = std::to_string(config.seed);
    return sweep;
}

std::vector<std::complex<double>> eigenvalues_dense(const Mat& j) {
    if (j.rows() != j.cols()) throw ContractError("square matrix required");
    if (j.rows() > 300)
        throw ConfigError("dense eigenvalue dump is limited to n <= 300; use spectral_radius");
    Eigen::EigenSolver<Mat> solver(j, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace eoc
