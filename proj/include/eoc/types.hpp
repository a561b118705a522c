#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Core>

#include "eoc/errors.hpp"

namespace eoc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Arch { Rnn, Lstm, Gru };

enum class Gate { Forget, Input, Output, Update, Reset };

std::string to_string(Arch a);
std::string to_string(Gate g);
Arch arch_from_string(const std::string& s);

/// Scalar activations shipped with the library. phi'(0) = psi'(0) = 1 for both,
/// which the linearized criterion relies on; other activations would enter the
/// Jacobian through the derivative-at-zero hooks below.
enum class Activation { Tanh, Identity };

/// Which model the unified update specializes to, together with its activations
/// and how the visible state presented to the gates is formed.
struct ArchitectureSpec {
    Arch kind = Arch::Lstm;
    Activation phi = Activation::Tanh;  // candidate nonlinearity
    Activation psi = Activation::Tanh;  // applied to h inside the recurrent sum

    static ArchitectureSpec make(Arch kind) {
        ArchitectureSpec a;
        a.kind = kind;
        a.phi = Activation::Tanh;
        a.psi = (kind == Arch::Lstm) ? Activation::Tanh : Activation::Identity;
        return a;
    }

    /// Gates of this architecture, in canonical order.
    std::span<const Gate> gates() const;

    /// LSTM presents o * tanh(h) to the gates; RNN/GRU present h itself.
    bool output_gated_visible() const { return kind == Arch::Lstm; }

    double phi_prime0() const { return 1.0; }
    double psi_prime0() const { return 1.0; }
};

/// How gate and candidate biases are initialized.
///
/// The candidate-bias spread s_c is stored separately from the gate-bias
/// parameters: the critical-gain analysis requires s_c = 0 (the origin must
/// stay a fixed point), but the dynamics engine accepts s_c > 0.
struct BiasScheme {
    enum class Kind { Zero, Gaussian, Chrono };

    Kind kind = Kind::Zero;
    double s_b = 0.0;    // Gaussian gate-bias standard deviation
    double t_max = 0.0;  // Chrono timescale upper bound (> 2)
    Kind output_kind = Kind::Zero;  // Chrono: how the output-gate bias is drawn
    double s_o = 0.0;               // Chrono: sd when output_kind == Gaussian
    double s_c = 0.0;               // candidate-bias standard deviation

    static BiasScheme zero(double s_c = 0.0) {
        BiasScheme b;
        b.kind = Kind::Zero;
        b.s_c = s_c;
        return b;
    }
    static BiasScheme gaussian(double s_b, double s_c = 0.0) {
        BiasScheme b;
        b.kind = Kind::Gaussian;
        b.s_b = s_b;
        b.s_c = s_c;
        return b;
    }
    static BiasScheme chrono(double t_max, Kind output_kind = Kind::Zero, double s_o = 0.0) {
        BiasScheme b;
        b.kind = Kind::Chrono;
        b.t_max = t_max;
        b.output_kind = output_kind;
        b.s_o = s_o;
        return b;
    }

    void validate() const {
        if (s_c < 0.0) throw ConfigError("candidate bias sd s_c must be >= 0");
        if (kind == Kind::Gaussian && s_b < 0.0) throw ConfigError("gaussian bias sd s_b must be >= 0");
        if (kind == Kind::Chrono && !(t_max > 2.0)) throw ConfigError("chrono requires t_max > 2");
        if (kind == Kind::Chrono && output_kind == Kind::Chrono)
            throw ConfigError("chrono output-gate bias must be zero or gaussian");
        if (kind == Kind::Chrono && output_kind == Kind::Gaussian && s_o < 0.0)
            throw ConfigError("chrono output bias sd s_o must be >= 0");
    }
};

/// Everything needed to realize and evolve one network.
struct NetworkConfig {
    Arch arch = Arch::Lstm;
    int n = 0;  // hidden size
    int k = 1;  // input size
    double g = 1.0;
    BiasScheme bias;
    std::uint64_t seed = 0;

    ArchitectureSpec spec() const { return ArchitectureSpec::make(arch); }

    void validate() const {
        if (n < 1) throw ConfigError("hidden size n must be >= 1");
        if (k < 1) throw ConfigError("input size k must be >= 1");
        if (g < 0.0) throw ConfigError("gain g must be >= 0");
        bias.validate();
        if (bias.kind == BiasScheme::Kind::Chrono && arch != Arch::Lstm)
            throw ConfigError("chrono initialization is defined for the LSTM only");
    }
};

}  // namespace eoc
