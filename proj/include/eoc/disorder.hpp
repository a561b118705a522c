#pragma once

// Sampling of the quenched disorder: recurrent/input weight matrices for the
// candidate and every gate, plus the bias vectors of the chosen scheme.
//
// Every component draws from its own named Philox substream (see rng.hpp), so
// a realization is a pure function of (config, seed) and changing one scheme
// parameter never reshuffles unrelated components.

#include <cstdint>
#include <vector>

#include "eoc/rng.hpp"
#include "eoc/types.hpp"

namespace eoc {

/// One frozen sample of all random parameters of a network.
struct DisorderRealization {
    Arch arch = Arch::Lstm;
    int n = 0, k = 0;
    std::uint64_t seed = 0;

    Mat u;  // candidate recurrent weights, n x n, entries N(0, 1/n)
    Mat w;  // candidate input weights, n x k, entries N(0, 1/k)
    std::vector<Mat> gate_u;  // per gate, same distribution as u
    std::vector<Mat> gate_w;  // per gate, same distribution as w
    std::vector<Vec> gate_b;  // per gate bias vector
    Vec b_c;                  // candidate bias

    /// Index of `gate` within the per-gate vectors above.
    int gate_index(Gate gate) const;
    const Vec& bias(Gate gate) const { return gate_b[static_cast<std::size_t>(gate_index(gate))]; }

    bool candidate_bias_is_zero() const { return b_c.size() == 0 || b_c.isZero(0.0); }
};

/// i.i.d. N(0, variance) matrix; entries drawn in row-major order from `gs`.
Mat sample_weights(int rows, int cols, double variance, GaussianStream& gs);

/// Bias vector for `gate` under `scheme`. Substreams are derived internally
/// from (seed, gate), except that the chrono forget/input pair shares a single
/// timescale stream so that b_input = -b_forget holds entrywise.
Vec sample_biases(const BiasScheme& scheme, Arch arch, Gate gate, int n, std::uint64_t seed);

/// Candidate bias: N(0, s_c^2), all zeros when s_c = 0.
Vec sample_candidate_bias(const BiasScheme& scheme, int n, std::uint64_t seed);

/// Samples the full disorder of `config` deterministically from `config.seed`.
DisorderRealization realize(const NetworkConfig& config);

}  // namespace eoc
