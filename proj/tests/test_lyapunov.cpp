#include <doctest.h>

#include <cmath>
#include <limits>

#include "eoc/cli.hpp"
#include "eoc/lyapunov.hpp"

using namespace eoc;

namespace {

NetworkConfig make_config(Arch arch, int n, std::uint64_t seed,
                          BiasScheme bias = BiasScheme::zero()) {
    NetworkConfig cfg;
    cfg.arch = arch;
    cfg.n = n;
    cfg.seed = seed;
    cfg.bias = bias;
    return cfg;
}

}  // namespace

TEST_CASE("linear contraction oracle: lambda = log(c) exactly") {
    for (double c : {0.3, 0.9}) {
        const auto map = [c](const Mat& h) { return Mat(c * h); };
        const auto est = benettin_core(map, Vec::Ones(50), Vec::Unit(50, 3), 500, 50, 1e-7);
        CHECK(est.lambda_max == doctest::Approx(std::log(c)).epsilon(1e-12));
        CHECK(est.stderr_ < 1e-12);
        CHECK(est.steps_used == 450);
        CHECK_FALSE(est.merged);
    }
}

TEST_CASE("exactly merging trajectories yield the -inf sentinel") {
    const auto map = [](const Mat& h) { return Mat(0.0 * h); };
    const auto est = benettin_core(map, Vec::Ones(10), Vec::Unit(10, 0), 100, 10, 1e-7);
    CHECK(est.merged);
    CHECK(std::isinf(est.lambda_max));
    CHECK(est.lambda_max < 0.0);
}

TEST_CASE("zero-bias LSTM at g = 0 is an exact half-contraction") {
    const auto cfg = make_config(Arch::Lstm, 60, 12);
    const auto d = realize(cfg);
    const auto est =
        benettin_lambda_max(d, cfg.spec(), 0.0, Vec::Ones(60), 800, 100, 1e-7);
    CHECK(est.lambda_max == doctest::Approx(std::log(0.5)).epsilon(1e-6));
}

TEST_CASE("benettin rejects bad hyperparameters") {
    const auto map = [](const Mat& h) { return h; };
    CHECK_THROWS_AS(benettin_core(map, Vec::Ones(4), Vec::Unit(4, 0), 10, 10, 1e-7),
                    ConfigError);
    CHECK_THROWS_AS(benettin_core(map, Vec::Ones(4), Vec::Unit(4, 0), 10, 2, 0.0), ConfigError);
}

TEST_CASE("estimates are robust to the perturbation size") {
    const auto cfg = make_config(Arch::Lstm, 300, 5);
    const auto d = realize(cfg);
    BenettinParams bp;
    bp.steps = 1500;
    bp.transient = 200;
    for (double g : {1.5, 2.5}) {
        LyapunovEstimate prev;
        bool have_prev = false;
        for (double eps : {1e-9, 1e-7, 1e-5}) {
            const auto est = benettin_lambda_max(d, cfg.spec(), g, Vec::Ones(300), bp.steps,
                                                 bp.transient, eps);
            if (have_prev) {
                const double joint =
                    std::sqrt(est.stderr_ * est.stderr_ + prev.stderr_ * prev.stderr_);
                CHECK(std::abs(est.lambda_max - prev.lambda_max) <= 3.0 * std::max(joint, 1e-9));
            }
            prev = est;
            have_prev = true;
        }
    }
}

TEST_CASE("replica-averaged exponent changes sign around the predicted gain") {
    for (Arch arch : {Arch::Lstm, Arch::Gru}) {
        for (double s_b : {0.0, 1.0}) {
            const auto cfg = make_config(arch, 400, 21, BiasScheme::gaussian(s_b));
            const double gc = gc_gaussian_asymptotic(arch, s_b).g_c;
            BenettinParams bp;
            bp.steps = 1500;
            const auto below = replica_lambda(cfg, 0.8 * gc, 3, bp);
            const auto above = replica_lambda(cfg, 1.2 * gc, 3, bp);
            CHECK(below.lambda_max < 0.0);
            CHECK(above.lambda_max > 0.0);
        }
    }
}

TEST_CASE("bisection locates the zero-bias crossing near 2") {
    const auto cfg = make_config(Arch::Lstm, 300, 8);
    BenettinParams bp;
    bp.steps = 1200;
    const auto cross = find_crossing(cfg, 1.0, 3.0, 0.05, 4, bp);
    CHECK(cross.g_star > 1.8);
    CHECK(cross.g_star < 2.4);
    CHECK(cross.g_lo < cross.g_star);
    CHECK(cross.g_star < cross.g_hi);
    CHECK(cross.per_replica.size() == 4);
    CHECK(cross.ci95_halfwidth >= 0.0);

    const auto shared =
        find_crossing(cfg, 1.0, 3.0, 0.05, 4, bp, CrossingMode::SharedBracket);
    CHECK(std::abs(shared.g_star - cross.g_star) < 0.35);
}

TEST_CASE("a bracket without a sign change is reported") {
    const auto cfg = make_config(Arch::Lstm, 100, 8);
    BenettinParams bp;
    bp.steps = 600;
    CHECK_THROWS_AS(find_crossing(cfg, 2.8, 3.2, 0.05, 2, bp), BracketError);
}
