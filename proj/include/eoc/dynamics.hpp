#pragma once

// The unified gated recurrent update
//
//   h'_i = A_i [ (1 - alpha_i) h_i + alpha_i phi(c_i) ],
//   c_i  = g sum_j U_ij o_j psi(h_j) + sum_k W_ik x_k + b_c,i
//
// with the RNN / LSTM / GRU instantiations of (A, alpha, o):
//
//   RNN :  A = 1      alpha = 1          o = 1      psi = Id
//   LSTM:  A = f + i  alpha = i/(f + i)  o = output psi = tanh
//   GRU :  A = 1      alpha = z          o = r      psi = Id
//
// Gates are sigmoids of the visible state (h for RNN/GRU, o * tanh(h) for the
// LSTM) and the current input; all gates used in one step are computed from the
// current h before the state update. The LSTM output gate is evaluated first,
// from tanh(h), and the resulting o * tanh(h) is what the forget/input gates
// and the candidate see.

#include <cstdint>
#include <utility>
#include <vector>

#include "eoc/disorder.hpp"
#include "eoc/types.hpp"

namespace eoc {

/// Gate activations for state `h` and input `x` (pass a zero-size x for the
/// autonomous case). Returned in the order of ArchitectureSpec::gates().
std::vector<Vec> gate_values(const DisorderRealization& d, const ArchitectureSpec& arch,
                             double g, const Vec& h, const Vec& x);

/// One update of a batch of states (columns of `h`). `x` must have one column
/// per state column, or be 0 x 0 for autonomous evolution. Throws BlowupError
/// if the result is not finite.
Mat step_batch(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
               const Mat& h, const Mat& x);

/// Single-state convenience wrapper.
Vec step(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
         const Vec& h, const Vec& x = Vec());

/// Autonomous evolution for `steps` steps, streaming each state (including the
/// initial one) into `observe(t, h)` without storing the trajectory.
template <class Observer>
void run_autonomous(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
                    const Vec& h0, long steps, Observer&& observe) {
    Vec h = h0;
    observe(static_cast<long>(0), h);
    for (long t = 1; t <= steps; ++t) {
        try {
            h = step(d, arch, g, h);
        } catch (BlowupError& e) {
            throw BlowupError(e.what(), t, d.seed);
        }
        observe(t, h);
    }
}

/// Autonomous evolution that stores the full trajectory (steps + 1 states).
std::vector<Vec> run_autonomous_trajectory(const DisorderRealization& d,
                                           const ArchitectureSpec& arch, double g,
                                           const Vec& h0, long steps);

}  // namespace eoc
