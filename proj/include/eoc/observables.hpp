#pragma once

// Mean-square activity q_t = (1/N) sum_i h_i^2 and its long-time estimate,
// averaged over independent disorder replicas.

#include "eoc/types.hpp"

namespace eoc {

double q_of_state(const Vec& h);

struct QEstimate {
    double g = 0.0;
    double mean_q_inf = 0.0;
    double ci95_halfwidth = 0.0;
    int replicas = 0;
    long steps = 0;
    int n = 0;
};

/// Default averaging window for the long-time value: min(T/4, 500) steps.
long default_tail_window(long steps);

/// Evolves `replicas` independent realizations of `config` (replica r uses
/// derive_seed(config.seed, r)) autonomously from h0 for `steps` steps, then
/// averages q_t over the final `tail_window` steps of each. Reports the mean
/// and 95% t-interval across replicas.
QEstimate estimate_q_inf(const NetworkConfig& config, double g, long steps, int replicas,
                         long tail_window, const Vec& h0);

/// Same, with h0 = all-ones.
QEstimate estimate_q_inf(const NetworkConfig& config, double g, long steps, int replicas,
                         long tail_window = 0);

}  // namespace eoc
