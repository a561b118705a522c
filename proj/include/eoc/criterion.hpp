#pragma once

// Closed-form side of the stability analysis. The linearization of the gated
// update at the origin is J = diag(M) + g diag(L) U diag(R) with diagonal
// entries read off the gates at h = 0 (sigmoids of the bias vectors):
//
//   LSTM:  M = sigmoid(b_forget)      L = sigmoid(b_input)   R = sigmoid(b_output)
//   GRU :  M = 1 - sigmoid(b_update)  L = sigmoid(b_update)  R = sigmoid(b_reset)
//   RNN :  M = 0                      L = 1                  R = 1
//
// The spectral support of J touches the unit circle first at z = 1, which
// turns the boundary condition (1/N) sum g^2 L_i^2 R_i^2 / |z - M_i|^2 = 1
// into the critical-gain rule
//
//   g_c = [ (1/N) sum_i L_i^2 R_i^2 / (1 - M_i)^2 ]^{-1/2}.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

#include "eoc/disorder.hpp"
#include "eoc/types.hpp"

namespace eoc {

/// Diagonal entries of the linearization, evaluated at the origin fixed point.
///
/// `m_complement` is 1 - M computed at the gate level (sigmoid of the negated
/// bias) rather than by subtraction, so structural cancellations — the GRU's
/// L = 1 - M, and the chrono-initialized LSTM's tied gates — hold bitwise in
/// critical_gain instead of up to rounding.
struct DiagonalTriple {
    Vec m, l, r;
    Vec m_complement;
    int n() const { return static_cast<int>(m.size()); }

    /// Builds a triple from plain (M, L, R) vectors; the complement falls back
    /// to floating 1 - M.
    static DiagonalTriple from_mlr(Vec m, Vec l, Vec r) {
        DiagonalTriple t;
        t.m_complement = Vec::Ones(m.size()) - m;
        t.m = std::move(m);
        t.l = std::move(l);
        t.r = std::move(r);
        return t;
    }
};

struct CriticalGainPrediction {
    enum class Mode { FiniteN, Asymptotic };
    double g_c = 0.0;
    Mode mode = Mode::FiniteN;
    Arch arch = Arch::Lstm;
    BiasScheme scheme;
    int n = 0;               // triple size (FiniteN mode)
    std::uint64_t seed = 0;  // realization seed (FiniteN mode)
};

/// Reads (M, L, R) off a sampled realization. Only the bias vectors matter:
/// at h = 0 every gate collapses to sigmoid of its bias.
DiagonalTriple extract_mlr(const DisorderRealization& d, const ArchitectureSpec& arch);

/// (1/N) sum_i g^2 L_i^2 R_i^2 / |z - M_i|^2. The spectral-support boundary is
/// the locus where this equals 1. Throws PoleError if z hits some M_i.
double boundary_sum(const DiagonalTriple& t, double g, std::complex<double> z);

/// r-regularized variant (1/N) sum_i g^2 / (sv_i^2 + r^2) with
/// sv_i = |z - M_i| / (L_i R_i); coincides with boundary_sum at r = 0.
double regularized_boundary_sum(const DiagonalTriple& t, double g, std::complex<double> z,
                                double reg);

/// Critical gain of a sampled triple (finite-N rule above).
CriticalGainPrediction critical_gain(const DiagonalTriple& t);

/// Mean of sigmoid(b)^2 under b ~ N(0, s_b^2). Exact 1/4 at s_b = 0;
/// deterministic quadrature otherwise (see criterion.cpp for the method).
double sigma_sq_mean(double s_b);

/// Mean of 1/(1 - sigmoid(b))^2 = (1 + e^b)^2 under b ~ N(0, s_b^2), in closed
/// form: 1 + 2 exp(s_b^2/2) + exp(2 s_b^2). Saturates to +inf on overflow
/// (sets *overflowed when given).
double inv_one_minus_sigmoid_sq_mean(double s_b, bool* overflowed = nullptr);

/// Large-N critical gain under Gaussian biases of spread s_b:
///   GRU:  <sigmoid(b)^2>^{-1/2}  (update-gate factors cancel exactly)
///   LSTM: [ <L^2> <R^2> <(1-M)^{-2}> ]^{-1/2}, each factor a 1-D quadrature
///   RNN:  1 (no gates)
CriticalGainPrediction gc_gaussian_asymptotic(Arch arch, double s_b);

struct MonotonicityReport {
    bool strictly_increasing = false;
    double min_margin = 0.0;  // smallest consecutive difference; +inf for a single point
};

/// Verifies that sigma_sq_mean is strictly increasing on a grid of s_b values.
MonotonicityReport monotonicity_check(std::span<const double> s_b_grid);

/// Adaptive Gauss-Hermite expectation <f(b)>, b ~ N(0, sd^2): order doubles
/// from 16 until successive estimates differ by < tol (relative above 1).
double gaussian_expectation(const std::function<double(double)>& f, double sd,
                            double tol = 1e-10, int max_order = 1024);

}  // namespace eoc
