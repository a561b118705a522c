#include <doctest.h>

#include <cmath>

#include "eoc/disorder.hpp"

using namespace eoc;

namespace {

NetworkConfig lstm_config(int n, std::uint64_t seed, BiasScheme bias = BiasScheme::zero()) {
    NetworkConfig cfg;
    cfg.arch = Arch::Lstm;
    cfg.n = n;
    cfg.k = 1;
    cfg.seed = seed;
    cfg.bias = bias;
    return cfg;
}

}  // namespace

TEST_CASE("sampled weights have the requested variance (chi-square band)") {
    GaussianStream gs(11, "var-check");
    const int n = 2000;
    const double variance = 1.0 / n;
    const Mat m = sample_weights(n, n, variance, gs);
    const double count = static_cast<double>(n) * n;
    const double mean = m.mean();
    const double sample_var = (m.array() - mean).square().sum() / (count - 1.0);
    // sd of the sample variance of count iid gaussians is variance*sqrt(2/count).
    const double band = 3.0 * variance * std::sqrt(2.0 / count);
    CHECK(std::abs(sample_var - variance) < band);
    // sample mean: sd = sqrt(variance/count)
    CHECK(std::abs(mean) < 3.0 * std::sqrt(variance / count));
}

TEST_CASE("weight sampling is deterministic in the stream") {
    GaussianStream a(42, "w"), b(42, "w");
    const Mat ma = sample_weights(40, 30, 0.5, a);
    const Mat mb = sample_weights(40, 30, 0.5, b);
    CHECK(ma == mb);
}

TEST_CASE("single standard-normal draws average to zero over many seeds") {
    // 1e5 independent single draws; CLT band 3/sqrt(1e5).
    const int trials = 100000;
    double sum = 0.0;
    for (int s = 0; s < trials; ++s) {
        GaussianStream gs(static_cast<std::uint64_t>(s), "single");
        sum += sample_weights(1, 1, 1.0, gs)(0, 0);
    }
    CHECK(std::abs(sum / trials) < 3.0 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("invalid sampling arguments are rejected") {
    GaussianStream gs(0, "x");
    CHECK_THROWS_AS(sample_weights(0, 3, 1.0, gs), ConfigError);
    CHECK_THROWS_AS(sample_weights(3, 0, 1.0, gs), ConfigError);
    CHECK_THROWS_AS(sample_weights(3, 3, 0.0, gs), ConfigError);
    CHECK_THROWS_AS(sample_weights(3, 3, -1.0, gs), ConfigError);
}

TEST_CASE("zero and degenerate-gaussian schemes give all-zero biases") {
    const Vec z = sample_biases(BiasScheme::zero(), Arch::Lstm, Gate::Forget, 5, 9);
    CHECK(z.isZero(0.0));
    const Vec g0 = sample_biases(BiasScheme::gaussian(0.0), Arch::Lstm, Gate::Forget, 5, 9);
    CHECK(g0.isZero(0.0));
}

TEST_CASE("chrono ties the input gate to the forget gate") {
    const auto scheme = BiasScheme::chrono(100.0);
    const Vec bf = sample_biases(scheme, Arch::Lstm, Gate::Forget, 1000, 3);
    const Vec bi = sample_biases(scheme, Arch::Lstm, Gate::Input, 1000, 3);
    CHECK((bi + bf).isZero(0.0));  // b_i = -b_f exactly
    // sigmoid(b_f) + sigmoid(b_i) = 1 entrywise.
    double worst = 0.0;
    for (int i = 0; i < bf.size(); ++i) {
        const double s = 1.0 / (1.0 + std::exp(-bf[i])) + 1.0 / (1.0 + std::exp(-bi[i]));
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst < 1e-12);
    // timescales tau = 1 + exp(b_f) live in (2, t_max)
    CHECK(bf.minCoeff() > 0.0);
    CHECK(bf.maxCoeff() < std::log(99.0));
}

TEST_CASE("chrono is rejected outside the LSTM") {
    CHECK_THROWS_AS(sample_biases(BiasScheme::chrono(10.0), Arch::Gru, Gate::Update, 4, 0),
                    ConfigError);
    NetworkConfig cfg;
    cfg.arch = Arch::Gru;
    cfg.n = 4;
    cfg.bias = BiasScheme::chrono(10.0);
    CHECK_THROWS_AS(realize(cfg), ConfigError);
}

TEST_CASE("realize: zero-bias LSTM has zero biases and five weight matrices") {
    const auto d = realize(lstm_config(4, 7));
    CHECK(d.gate_u.size() == 3);
    CHECK(d.gate_w.size() == 3);
    CHECK(d.u.rows() == 4);
    CHECK(d.w.cols() == 1);
    for (const auto& b : d.gate_b) CHECK(b.isZero(0.0));
    CHECK(d.b_c.isZero(0.0));
}

TEST_CASE("realize: same seed reproduces bit-identical disorder, different seed differs") {
    const auto a = realize(lstm_config(16, 7));
    const auto b = realize(lstm_config(16, 7));
    const auto c = realize(lstm_config(16, 8));
    CHECK(a.u == b.u);
    CHECK(a.gate_u[2] == b.gate_u[2]);
    CHECK(a.u != c.u);
}

TEST_CASE("realize: GRU carries exactly the update and reset gates") {
    NetworkConfig cfg;
    cfg.arch = Arch::Gru;
    cfg.n = 6;
    cfg.seed = 1;
    const auto d = realize(cfg);
    CHECK(d.gate_u.size() == 2);
    const auto gates = cfg.spec().gates();
    REQUIRE(gates.size() == 2);
    CHECK(gates[0] == Gate::Update);
    CHECK(gates[1] == Gate::Reset);
    CHECK_THROWS_AS(d.gate_index(Gate::Forget), ContractError);
}

TEST_CASE("substream independence: s_c does not perturb gate biases or weights") {
    auto with_sc = lstm_config(32, 5, BiasScheme::gaussian(1.5, /*s_c=*/0.0));
    const auto a = realize(with_sc);
    with_sc.bias.s_c = 2.0;
    const auto b = realize(with_sc);
    CHECK(a.gate_b[0] == b.gate_b[0]);
    CHECK(a.gate_b[1] == b.gate_b[1]);
    CHECK(a.gate_b[2] == b.gate_b[2]);
    CHECK(a.u == b.u);
    CHECK(a.b_c.isZero(0.0));
    CHECK_FALSE(b.b_c.isZero(0.0));
}

TEST_CASE("gaussian gate biases have the requested spread") {
    const auto d = realize(lstm_config(4000, 21, BiasScheme::gaussian(2.0)));
    for (const auto& b : d.gate_b) {
        const double var = b.squaredNorm() / b.size();
        CHECK(std::abs(var - 4.0) < 3.0 * 4.0 * std::sqrt(2.0 / b.size()));
    }
    // distinct gates get distinct samples
    CHECK(d.gate_b[0] != d.gate_b[1]);
}
