#include "eoc/disorder.hpp"

#include <array>
#include <cmath>
#include <string>

namespace eoc {

namespace {

constexpr std::array<Gate, 3> kLstmGates = {Gate::Forget, Gate::Input, Gate::Output};
constexpr std::array<Gate, 2> kGruGates = {Gate::Update, Gate::Reset};

std::string gate_label(Gate g) {
    switch (g) {
        case Gate::Forget: return "forget";
        case Gate::Input: return "input";
        case Gate::Output: return "output";
        case Gate::Update: return "update";
        case Gate::Reset: return "reset";
    }
    throw ContractError("unknown gate");
}

}  // namespace

std::span<const Gate> ArchitectureSpec::gates() const {
    switch (kind) {
        case Arch::Rnn: return {};
        case Arch::Lstm: return kLstmGates;
        case Arch::Gru: return kGruGates;
    }
    throw ContractError("unknown architecture");
}

std::string to_string(Arch a) {
    switch (a) {
        case Arch::Rnn: return "rnn";
        case Arch::Lstm: return "lstm";
        case Arch::Gru: return "gru";
    }
    throw ContractError("unknown architecture");
}

std::string to_string(Gate g) { return gate_label(g); }

Arch arch_from_string(const std::string& s) {
    if (s == "rnn") return Arch::Rnn;
    if (s == "lstm") return Arch::Lstm;
    if (s == "gru") return Arch::Gru;
    throw ConfigError("unknown architecture '" + s + "' (expected rnn, lstm or gru)");
}

int DisorderRealization::gate_index(Gate gate) const {
    const auto gates = ArchitectureSpec::make(arch).gates();
    for (std::size_t i = 0; i < gates.size(); ++i)
        if (gates[i] == gate) return static_cast<int>(i);
    throw ContractError("gate '" + gate_label(gate) + "' not present in " + to_string(arch));
}

Mat sample_weights(int rows, int cols, double variance, GaussianStream& gs) {
    if (rows < 1 || cols < 1) throw ConfigError("weight matrix dimensions must be >= 1");
    if (!(variance > 0.0)) throw ConfigError("weight variance must be > 0");
    const double sd = std::sqrt(variance);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = sd * gs.next();
    return m;
}

Vec sample_biases(const BiasScheme& scheme, Arch arch, Gate gate, int n, std::uint64_t seed) {
    scheme.validate();
    if (n < 1) throw ConfigError("bias length must be >= 1");
    const bool belongs = [&] {
        for (Gate g : ArchitectureSpec::make(arch).gates())
            if (g == gate) return true;
        return false;
    }();
    if (!belongs)
        throw ConfigError("gate '" + gate_label(gate) + "' does not belong to " + to_string(arch));

    switch (scheme.kind) {
        case BiasScheme::Kind::Zero:
            return Vec::Zero(n);
        case BiasScheme::Kind::Gaussian: {
            if (scheme.s_b == 0.0) return Vec::Zero(n);
            GaussianStream gs(seed, "b." + gate_label(gate));
            Vec b(n);
            for (int i = 0; i < n; ++i) b[i] = scheme.s_b * gs.next();
            return b;
        }
        case BiasScheme::Kind::Chrono: {
            if (arch != Arch::Lstm)
                throw ConfigError("chrono initialization is defined for the LSTM only");
            if (gate == Gate::Output) {
                BiasScheme out;
                out.kind = scheme.output_kind;
                out.s_b = scheme.s_o;
                return sample_biases(out, arch, gate, n, seed);
            }
            // Forget and input share the timescale stream: tau ~ U(2, t_max),
            // b_forget = log(tau - 1), b_input = -b_forget entrywise.
            Philox4x32 tau_stream(seed, "b.chrono.tau");
            Vec b(n);
            const double sign = (gate == Gate::Forget) ? 1.0 : -1.0;
            for (int i = 0; i < n; ++i) {
                const double tau = 2.0 + (scheme.t_max - 2.0) * tau_stream.next_unit();
                b[i] = sign * std::log(tau - 1.0);
            }
            return b;
        }
    }
    throw ContractError("unknown bias scheme");
}

Vec sample_candidate_bias(const BiasScheme& scheme, int n, std::uint64_t seed) {
    scheme.validate();
    if (scheme.s_c == 0.0) return Vec::Zero(n);
    GaussianStream gs(seed, "b.candidate");
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = scheme.s_c * gs.next();
    return b;
}

DisorderRealization realize(const NetworkConfig& config) {
    config.validate();
    const auto spec = config.spec();

    DisorderRealization d;
    d.arch = config.arch;
    d.n = config.n;
    d.k = config.k;
    d.seed = config.seed;

    {
        GaussianStream gs(config.seed, "w.candidate.recurrent");
        d.u = sample_weights(config.n, config.n, 1.0 / config.n, gs);
    }
    {
        GaussianStream gs(config.seed, "w.candidate.input");
        d.w = sample_weights(config.n, config.k, 1.0 / config.k, gs);
    }
    for (Gate g : spec.gates()) {
        GaussianStream gu(config.seed, "w." + gate_label(g) + ".recurrent");
        d.gate_u.push_back(sample_weights(config.n, config.n, 1.0 / config.n, gu));
        GaussianStream gw(config.seed, "w." + gate_label(g) + ".input");
        d.gate_w.push_back(sample_weights(config.n, config.k, 1.0 / config.k, gw));
        d.gate_b.push_back(sample_biases(config.bias, config.arch, g, config.n, config.seed));
    }
    d.b_c = sample_candidate_bias(config.bias, config.n, config.seed);
    return d;
}

}  // namespace eoc
