#pragma once

// Maximal Lyapunov exponent by the two-trajectory Benettin method: evolve a
// reference state and a copy displaced by eps, accumulate log(separation/eps)
// each step, and rescale the separation back to eps. The exponent is the time
// average after a transient; the error estimate is a batch-means standard
// error. The empirical critical gain is located by bisection on the sign of
// the exponent.

#include <cstdint>
#include <functional>
#include <vector>

#include "eoc/disorder.hpp"
#include "eoc/dynamics.hpp"
#include "eoc/stats.hpp"
#include "eoc/types.hpp"

namespace eoc {

struct LyapunovEstimate {
    double g = 0.0;
    double lambda_max = 0.0;   // nats/step; -inf if the trajectories merged exactly
    double stderr_ = 0.0;      // batch-means standard error
    long steps_used = 0;       // steps contributing to the average
    long transient = 0;
    int replicas = 1;
    double eps = 0.0;
    bool merged = false;  // separation hit exactly zero (converged to the attractor)
};

/// Batch-means summary of per-step log-stretch increments.
LyapunovEstimate summarize_increments(const std::vector<double>& increments, double g,
                                      long transient, double eps);

/// Core Benettin loop over an arbitrary batch map (columns 0/1 = reference /
/// perturbed state). Exposed so tests can drive it with exactly known maps.
template <class BatchMap>
LyapunovEstimate benettin_core(BatchMap&& map, const Vec& h0, const Vec& direction, long steps,
                               long transient, double eps) {
    if (steps <= transient || transient < 0) throw ConfigError("need steps > transient >= 0");
    if (!(eps > 0.0) || eps >= 1.0) throw ConfigError("need 0 < eps << 1");

    Mat h(h0.size(), 2);
    h.col(0) = h0;
    h.col(1) = h0 + eps * direction;

    std::vector<double> increments;
    increments.reserve(static_cast<std::size_t>(steps - transient));
    for (long t = 1; t <= steps; ++t) {
        h = map(h);
        const Vec diff = h.col(1) - h.col(0);
        const double dist = diff.norm();
        if (dist == 0.0) {
            auto est = summarize_increments(increments, 0.0, transient, eps);
            est.lambda_max = -std::numeric_limits<double>::infinity();
            est.merged = true;
            est.steps_used = t;
            return est;
        }
        if (t > transient) increments.push_back(std::log(dist / eps));
        h.col(1) = h.col(0) + (eps / dist) * diff;
    }
    return summarize_increments(increments, 0.0, transient, eps);
}

/// Benettin exponent of one realization of the gated dynamics at gain `g`.
/// The initial perturbation direction is a deterministic unit vector drawn
/// from the realization's "benettin.direction" substream.
LyapunovEstimate benettin_lambda_max(const DisorderRealization& d, const ArchitectureSpec& arch,
                                     double g, const Vec& h0, long steps, long transient,
                                     double eps);

struct BenettinParams {
    long steps = 3000;
    long transient = 200;
    double eps = 1e-7;
};

/// Replica-averaged exponent at one gain (replica r = derive_seed(seed, r)).
LyapunovEstimate replica_lambda(const NetworkConfig& base, double g, int replicas,
                                const BenettinParams& bp = {});

enum class CrossingMode {
    PerReplica,     // each replica bisects on its own disorder; crossings aggregated
    SharedBracket,  // bisection on the replica-averaged exponent
};

struct CrossingEstimate {
    double s_b = 0.0;  // gate-bias spread of the config family (0 for zero bias)
    double g_star = 0.0;
    double ci95_halfwidth = 0.0;
    double g_lo = 0.0, g_hi = 0.0;  // requested bracket
    int replicas = 0;
    std::vector<double> per_replica;  // per-replica crossing estimates
};

/// Locates the gain at which the replica Lyapunov exponent changes sign.
///
/// The bracket must satisfy mean lambda(g_lo) < 0 < mean lambda(g_hi); a
/// replica whose own exponent does not change sign inside it has its private
/// bracket widened geometrically (lo halved / hi grown by 1.5, at most 60/8
/// times) before bisection.
CrossingEstimate find_crossing(const NetworkConfig& base, double g_lo, double g_hi, double tol_g,
                               int replicas, const BenettinParams& bp = {},
                               CrossingMode mode = CrossingMode::PerReplica);

}  // namespace eoc
