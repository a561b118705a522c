#include "eoc/dynamics.hpp"

namespace eoc {

namespace {

using Arr = Eigen::ArrayXXd;

Arr sigmoid(const Arr& z) { return 1.0 / (1.0 + (-z).exp()); }

Arr apply_act(Activation a, const Arr& v) {
    return a == Activation::Tanh ? Arr(v.tanh()) : v;
}

/// g * (Ug * vis) + Wg * x + bg, broadcast over batch columns.
Mat preactivation(const Mat& ug, const Mat& wg, const Vec& bg, double g, const Mat& vis,
                  const Mat& x) {
    Mat p = g * (ug * vis);
    if (x.size() > 0) p.noalias() += wg * x;
    p.colwise() += bg;
    return p;
}

void check_shapes(const DisorderRealization& d, const Mat& h, const Mat& x) {
    if (h.rows() != d.n) throw ContractError("state dimension does not match realization");
    if (x.size() > 0 && (x.rows() != d.k || x.cols() != h.cols()))
        throw ContractError("input dimensions do not match realization/batch");
}

}  // namespace

std::vector<Vec> gate_values(const DisorderRealization& d, const ArchitectureSpec& arch,
                             double g, const Vec& h, const Vec& x) {
    check_shapes(d, h, x);
    std::vector<Vec> out;
    switch (arch.kind) {
        case Arch::Rnn:
            return out;  // no gates
        case Arch::Gru: {
            const int zi = d.gate_index(Gate::Update), ri = d.gate_index(Gate::Reset);
            out.push_back(sigmoid(preactivation(d.gate_u[zi], d.gate_w[zi], d.gate_b[zi], g, h, x).array()));
            out.push_back(sigmoid(preactivation(d.gate_u[ri], d.gate_w[ri], d.gate_b[ri], g, h, x).array()));
            return out;
        }
        case Arch::Lstm: {
            const int fi = d.gate_index(Gate::Forget), ii = d.gate_index(Gate::Input),
                      oi = d.gate_index(Gate::Output);
            const Mat th = apply_act(arch.psi, h.array());
            const Arr o = sigmoid(preactivation(d.gate_u[oi], d.gate_w[oi], d.gate_b[oi], g, th, x).array());
            const Mat vis = (o * th.array()).matrix();
            out.push_back(sigmoid(preactivation(d.gate_u[fi], d.gate_w[fi], d.gate_b[fi], g, vis, x).array()));
            out.push_back(sigmoid(preactivation(d.gate_u[ii], d.gate_w[ii], d.gate_b[ii], g, vis, x).array()));
            out.push_back(o.matrix());
            return out;
        }
    }
    throw ContractError("unknown architecture");
}

Mat step_batch(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
               const Mat& h, const Mat& x) {
    check_shapes(d, h, x);
    if (g < 0.0) throw ConfigError("gain g must be >= 0");

    Mat out;
    switch (arch.kind) {
        case Arch::Rnn: {
            Mat c = g * (d.u * h);  // psi = Id
            if (x.size() > 0) c.noalias() += d.w * x;
            c.colwise() += d.b_c;
            out = apply_act(arch.phi, c.array()).matrix();
            break;
        }
        case Arch::Gru: {
            const int zi = d.gate_index(Gate::Update), ri = d.gate_index(Gate::Reset);
            const Arr z = sigmoid(preactivation(d.gate_u[zi], d.gate_w[zi], d.gate_b[zi], g, h, x).array());
            const Arr r = sigmoid(preactivation(d.gate_u[ri], d.gate_w[ri], d.gate_b[ri], g, h, x).array());
            const Mat vis = (r * h.array()).matrix();  // o .* psi(h), psi = Id
            Mat c = g * (d.u * vis);
            if (x.size() > 0) c.noalias() += d.w * x;
            c.colwise() += d.b_c;
            const Arr cand = apply_act(arch.phi, c.array());
            out = ((1.0 - z) * h.array() + z * cand).matrix();
            break;
        }
        case Arch::Lstm: {
            const int fi = d.gate_index(Gate::Forget), ii = d.gate_index(Gate::Input),
                      oi = d.gate_index(Gate::Output);
            const Mat th = apply_act(arch.psi, h.array());
            const Arr o = sigmoid(preactivation(d.gate_u[oi], d.gate_w[oi], d.gate_b[oi], g, th, x).array());
            const Mat vis = (o * th.array()).matrix();
            const Arr f = sigmoid(preactivation(d.gate_u[fi], d.gate_w[fi], d.gate_b[fi], g, vis, x).array());
            const Arr i = sigmoid(preactivation(d.gate_u[ii], d.gate_w[ii], d.gate_b[ii], g, vis, x).array());
            Mat c = g * (d.u * vis);
            if (x.size() > 0) c.noalias() += d.w * x;
            c.colwise() += d.b_c;
            const Arr cand = apply_act(arch.phi, c.array());
            const Arr amp = f + i;                 // A
            const Arr alpha = i / amp;             // i/(f+i); sigmoids are strictly positive
            out = (amp * ((1.0 - alpha) * h.array() + alpha * cand)).matrix();
            break;
        }
        default:
            throw ContractError("unknown architecture");
    }
    if (!out.allFinite()) throw BlowupError("state became non-finite", -1, d.seed);
    return out;
}

Vec step(const DisorderRealization& d, const ArchitectureSpec& arch, double g, const Vec& h,
         const Vec& x) {
    const Mat hb = h;
    const Mat xb = (x.size() > 0) ? Mat(x) : Mat(0, 0);
    return step_batch(d, arch, g, hb, xb).col(0);
}

std::vector<Vec> run_autonomous_trajectory(const DisorderRealization& d,
                                           const ArchitectureSpec& arch, double g,
                                           const Vec& h0, long steps) {
    std::vector<Vec> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    run_autonomous(d, arch, g, h0, steps, [&](long, const Vec& h) { traj.push_back(h); });
    return traj;
}

}  // namespace eoc
