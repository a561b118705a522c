#include "eoc/observables.hpp"

#include <string>
#include <vector>

#include "eoc/dynamics.hpp"
#include "eoc/stats.hpp"

namespace eoc {

double q_of_state(const Vec& h) {
    if (h.size() == 0) throw ContractError("q of empty state");
    return h.squaredNorm() / static_cast<double>(h.size());
}

long default_tail_window(long steps) { return std::min<long>(std::max<long>(steps / 4, 1), 500); }

QEstimate estimate_q_inf(const NetworkConfig& config, double g, long steps, int replicas,
                         long tail_window, const Vec& h0) {
    config.validate();
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    if (tail_window < 1 || tail_window > steps)
        throw ConfigError("need steps >= tail_window >= 1");

    std::vector<double> q_tail(static_cast<std::size_t>(replicas), 0.0);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicas; ++r) {
        try {
            NetworkConfig cfg = config;
            cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
            const auto d = realize(cfg);
            double acc = 0.0;
            run_autonomous(d, config.spec(), g, h0, steps, [&](long t, const Vec& h) {
                if (t > steps - tail_window) acc += q_of_state(h);
            });
            q_tail[static_cast<std::size_t>(r)] = acc / static_cast<double>(tail_window);
        } catch (const BlowupError& e) {
#pragma omp critical
            if (!failure)
                failure = std::make_exception_ptr(BlowupError(
                    std::string(e.what()) + " (replica " + std::to_string(r) + ")", e.step,
                    e.seed));
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const auto ci = mean_ci95(q_tail);
    QEstimate est;
    est.g = g;
    est.mean_q_inf = ci.mean;
    est.ci95_halfwidth = ci.ci95_halfwidth;
    est.replicas = replicas;
    est.steps = steps;
    est.n = config.n;
    return est;
}

QEstimate estimate_q_inf(const NetworkConfig& config, double g, long steps, int replicas,
                         long tail_window) {
    if (tail_window == 0) tail_window = default_tail_window(steps);
    return estimate_q_inf(config, g, steps, replicas, tail_window, Vec::Ones(config.n));
}

}  // namespace eoc
