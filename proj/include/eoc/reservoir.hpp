#pragma once

// Reservoir-computing benchmark: a frozen gated network driven by the chaotic
// Mackey-Glass series, with a ridge readout trained to predict one step ahead.

#include <cstdint>
#include <span>
#include <vector>

#include "eoc/disorder.hpp"
#include "eoc/sweep.hpp"
#include "eoc/types.hpp"

namespace eoc {

/// Delay map u(t+1) = (1-gamma) u(t) + beta u(t-tau) / (1 + u(t-tau)^n).
struct MackeyGlassConfig {
    double beta = 0.2;
    double gamma = 0.1;
    double n_exp = 10.0;
    int tau = 25;              // integer delay, >= 1
    double history_init = 1.2; // constant pre-history and u(0)
    long length = 0;           // samples returned (after washout)
    long washout = 0;          // leading samples discarded

    void validate() const {
        if (tau < 1) throw ConfigError("mackey-glass delay tau must be >= 1");
        if (length < 1 || washout < 0) throw ConfigError("need length >= 1 and washout >= 0");
    }
};

std::vector<double> mackey_glass(const MackeyGlassConfig& config);

/// Drives the reservoir with the scalar sequence `input` (x_t = input_scale *
/// u(t), k = 1) from h0 and returns the hidden states as rows, the first
/// `washout` rows discarded. Requires a zero candidate bias.
Mat drive_reservoir(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
                    std::span<const double> input, double input_scale, long washout,
                    const Vec& h0);

struct ReadoutModel {
    Vec weights;               // n feature weights + trailing intercept
    double ridge_lambda = 0.0;
    double normal_residual = 0.0;  // relative residual of the normal equations
};

/// Ridge regression of `targets` on `features` plus an intercept column; the
/// penalty is not applied to the intercept. Throws SingularSystemError when
/// lambda = 0 and the system is rank-deficient.
ReadoutModel fit_ridge(const Mat& features, const Vec& targets, double ridge_lambda);

Vec predict(const ReadoutModel& model, const Mat& features);

double mean_squared_error(const Vec& predictions, const Vec& targets);

/// Full benchmark protocol.
struct RcProtocol {
    int n = 500;
    Arch arch = Arch::Lstm;
    long train_len = 3000;
    long test_len = 1000;
    long mg_washout = 1000;   // Mackey-Glass warmup samples discarded
    long res_washout = 500;   // reservoir warmup steps discarded
    double ridge_lambda = 1e-6;
    double input_scale = 1.0;
    MackeyGlassConfig mg;     // beta/gamma/n/tau/history used as configured
};

struct RcRunResult {
    double g = 0.0;
    double s_b = 0.0;
    int n = 0;
    double train_mse = 0.0;
    double test_mse = 0.0;
    std::uint64_t seed = 0;
};

/// Generates the series, drives the reservoir over it with a single washout,
/// fits the readout on the train segment against u(t+1), and reports train
/// and test MSE. Pure function of (protocol, g, s_b, seed).
RcRunResult rc_run(const RcProtocol& proto, double g, double s_b, std::uint64_t seed);

/// Accuracy heatmap over (s_b, g/g_c(s_b)) cells: mean of 1/test_mse over
/// `seeds` runs per cell, then each s_b row rescaled to [0, 1]. The gain is
/// ratio * g_c(s_b) with g_c from the asymptotic Gaussian criterion.
/// Columns: s_b, g_over_gc, g, normalized_accuracy.
SweepResult rc_heatmap(const RcProtocol& proto, std::span<const double> s_b_grid,
                       std::span<const double> g_over_gc_grid, int seeds,
                       std::uint64_t master_seed);

}  // namespace eoc
