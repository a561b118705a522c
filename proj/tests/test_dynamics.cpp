#include <doctest.h>

#include <cmath>

#include "eoc/dynamics.hpp"
#include "eoc/observables.hpp"

using namespace eoc;

namespace {

NetworkConfig make_config(Arch arch, int n, std::uint64_t seed,
                          BiasScheme bias = BiasScheme::zero(), double g = 1.0) {
    NetworkConfig cfg;
    cfg.arch = arch;
    cfg.n = n;
    cfg.k = 1;
    cfg.g = g;
    cfg.seed = seed;
    cfg.bias = bias;
    return cfg;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TEST_CASE("default activations have unit slope at the origin") {
    const double fd = (std::tanh(1e-6) - std::tanh(-1e-6)) / 2e-6;
    CHECK(fd == doctest::Approx(1.0).epsilon(1e-9));
    const auto lstm = ArchitectureSpec::make(Arch::Lstm);
    CHECK(lstm.phi_prime0() == 1.0);
    CHECK(lstm.psi_prime0() == 1.0);
    CHECK(lstm.phi == Activation::Tanh);
    CHECK(lstm.psi == Activation::Tanh);
    CHECK(ArchitectureSpec::make(Arch::Gru).psi == Activation::Identity);
    CHECK(ArchitectureSpec::make(Arch::Rnn).psi == Activation::Identity);
}

TEST_CASE("gates collapse to sigmoid of the bias at h = 0") {
    auto d = realize(make_config(Arch::Lstm, 12, 3, BiasScheme::gaussian(1.0)));
    const auto spec = ArchitectureSpec::make(Arch::Lstm);
    const auto gates = gate_values(d, spec, 1.7, Vec::Zero(12), Vec());
    REQUIRE(gates.size() == 3);
    for (std::size_t gi = 0; gi < gates.size(); ++gi)
        for (int i = 0; i < 12; ++i)
            CHECK(gates[gi][i] == doctest::Approx(sigmoid(d.gate_b[gi][i])).epsilon(1e-15));
}

TEST_CASE("zero biases give half-open gates at h = 0") {
    for (Arch arch : {Arch::Lstm, Arch::Gru}) {
        auto d = realize(make_config(arch, 8, 5));
        const auto gates = gate_values(d, ArchitectureSpec::make(arch), 2.5, Vec::Zero(8), Vec());
        for (const auto& gate : gates)
            for (int i = 0; i < 8; ++i) CHECK(gate[i] == 0.5);
    }
}

TEST_CASE("a hugely negative output bias silences the visible state") {
    auto d = realize(make_config(Arch::Lstm, 50, 11));
    d.gate_b[d.gate_index(Gate::Output)].setConstant(-30.0);
    d.gate_b[d.gate_index(Gate::Forget)].setConstant(0.3);
    d.gate_b[d.gate_index(Gate::Input)].setConstant(-0.7);
    GaussianStream gs(99, "state");
    Vec h(50);
    for (int i = 0; i < 50; ++i) h[i] = gs.next();
    const auto gates = gate_values(d, ArchitectureSpec::make(Arch::Lstm), 1.5, h, Vec());
    const auto& o = gates[2];
    CHECK(o.maxCoeff() < 1e-10);  // h_vis -> 0
    for (int i = 0; i < 50; ++i) {
        CHECK(gates[0][i] == doctest::Approx(sigmoid(0.3)).epsilon(1e-8));
        CHECK(gates[1][i] == doctest::Approx(sigmoid(-0.7)).epsilon(1e-8));
    }
}

TEST_CASE("hand-evaluated step at g = 0: all-ones state halves") {
    for (Arch arch : {Arch::Lstm, Arch::Gru}) {
        const auto d = realize(make_config(arch, 10, 2));
        const Vec h1 = step(d, ArchitectureSpec::make(arch), 0.0, Vec::Ones(10));
        for (int i = 0; i < 10; ++i) CHECK(h1[i] == 0.5);
    }
}

TEST_CASE("the origin is an exact fixed point for every g, seed and architecture") {
    int idx = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed)
        for (Arch arch : {Arch::Rnn, Arch::Lstm, Arch::Gru})
            for (double s_b : {0.0, 1.0, 3.0})
                for (double g : {0.0, 1.0, 2.5, 4.0}) {
                    const auto cfg =
                        make_config(arch, 4 + (idx++ % 29), seed, BiasScheme::gaussian(s_b));
                    const auto d = realize(cfg);
                    const Vec h1 = step(d, cfg.spec(), g, Vec::Zero(cfg.n));
                    CHECK(h1.isZero(0.0));
                }
}

TEST_CASE("g = 0 zero-bias LSTM contracts exactly geometrically") {
    const auto d = realize(make_config(Arch::Lstm, 16, 4));
    const auto traj = run_autonomous_trajectory(d, ArchitectureSpec::make(Arch::Lstm), 0.0,
                                                Vec::Ones(16), 10);
    REQUIRE(traj.size() == 11);
    const double expected = std::pow(2.0, -10.0);
    for (int i = 0; i < 16; ++i) CHECK(traj.back()[i] == expected);
}

TEST_CASE("zero-step run returns just the initial state") {
    const auto d = realize(make_config(Arch::Gru, 5, 1));
    const auto traj =
        run_autonomous_trajectory(d, ArchitectureSpec::make(Arch::Gru), 1.0, Vec::Ones(5), 0);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0] == Vec::Ones(5));
}

TEST_CASE("streaming fold sees the same states as the stored trajectory") {
    const auto cfg = make_config(Arch::Lstm, 20, 8, BiasScheme::gaussian(0.5));
    const auto d = realize(cfg);
    const auto traj = run_autonomous_trajectory(d, cfg.spec(), 2.0, Vec::Ones(20), 25);
    long count = 0;
    run_autonomous(d, cfg.spec(), 2.0, Vec::Ones(20), 25, [&](long t, const Vec& h) {
        CHECK(h == traj[static_cast<std::size_t>(t)]);
        ++count;
    });
    CHECK(count == 26);
}

TEST_CASE("gate ranges: strictly inside (0,1); LSTM amplitude in (0,2)") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        for (Arch arch : {Arch::Lstm, Arch::Gru}) {
            const auto cfg = make_config(arch, 30, seed, BiasScheme::gaussian(2.0));
            const auto d = realize(cfg);
            GaussianStream gs(seed, "probe-state");
            Vec h(30);
            for (int i = 0; i < 30; ++i) h[i] = 2.0 * gs.next();
            const auto gates = gate_values(d, cfg.spec(), 3.0, h, Vec());
            for (const auto& gate : gates) {
                CHECK(gate.minCoeff() > 0.0);
                CHECK(gate.maxCoeff() < 1.0);
            }
            if (arch == Arch::Lstm) {
                const Vec amp = gates[0] + gates[1];
                const Vec alpha = gates[1].cwiseQuotient(amp);
                CHECK(amp.minCoeff() > 0.0);
                CHECK(amp.maxCoeff() < 2.0);
                CHECK(alpha.minCoeff() > 0.0);
                CHECK(alpha.maxCoeff() < 1.0);
            }
        }
    }
}

TEST_CASE("bounded update: |h'| <= 2 max(|h|_inf, 1), no blowup at g = 4") {
    const auto cfg = make_config(Arch::Lstm, 200, 17, BiasScheme::gaussian(1.0));
    const auto d = realize(cfg);
    Vec h = Vec::Ones(200);
    for (long t = 0; t < 10000; ++t) {
        const double bound = 2.0 * std::max(h.lpNorm<Eigen::Infinity>(), 1.0);
        h = step(d, cfg.spec(), 4.0, h);
        CHECK(h.lpNorm<Eigen::Infinity>() <= bound);
    }
    CHECK(h.allFinite());
}

TEST_CASE("near the origin the update is odd to leading order") {
    for (Arch arch : {Arch::Rnn, Arch::Lstm, Arch::Gru}) {
        const auto cfg = make_config(arch, 24, 9);
        const auto d = realize(cfg);
        GaussianStream gs(1, "dir");
        Vec v(24);
        for (int i = 0; i < 24; ++i) v[i] = gs.next();
        const double eps = 1e-4;
        const Vec plus = step(d, cfg.spec(), 2.0, eps * v);
        const Vec minus = step(d, cfg.spec(), 2.0, -eps * v);
        CHECK((plus + minus).norm() < 1e-3 * eps * v.norm());
    }
}

TEST_CASE("dimension mismatches are contract errors") {
    const auto d = realize(make_config(Arch::Gru, 6, 0));
    CHECK_THROWS_AS(step(d, ArchitectureSpec::make(Arch::Gru), 1.0, Vec::Zero(7)),
                    ContractError);
    Vec x(3);  // k = 1 expected
    x.setZero();
    CHECK_THROWS_AS(step(d, ArchitectureSpec::make(Arch::Gru), 1.0, Vec::Zero(6), x),
                    ContractError);
}

TEST_CASE("supercritical zero-bias LSTM stays bounded with persistent activity") {
    const auto cfg = make_config(Arch::Lstm, 300, 23);
    const auto d = realize(cfg);
    Vec last;
    run_autonomous(d, cfg.spec(), 3.0, Vec::Ones(300), 4000, [&](long t, const Vec& h) {
        if (t == 4000) last = h;
    });
    CHECK(last.allFinite());
    CHECK(q_of_state(last) > 0.0);
}
