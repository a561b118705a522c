#include "eoc/reservoir.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "eoc/criterion.hpp"
#include "eoc/dynamics.hpp"
#include "eoc/stats.hpp"

namespace eoc {

std::vector<double> mackey_glass(const MackeyGlassConfig& config) {
    config.validate();
    const long total = config.washout + config.length;
    const int tau = config.tau;
    // Ring buffer over the last tau+1 values, seeded by a constant history.
    std::vector<double> buf(static_cast<std::size_t>(tau) + 1, config.history_init);
    std::size_t pos = 0;  // index of u(t - tau)
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total));
    double u = config.history_init;
    for (long t = 0; t < total; ++t) {
        const double delayed = buf[pos];
        const double next = (1.0 - config.gamma) * u +
                            config.beta * delayed / (1.0 + std::pow(delayed, config.n_exp));
        buf[pos] = next;
        pos = (pos + 1) % buf.size();
        u = next;
        out.push_back(u);
    }
    out.erase(out.begin(), out.begin() + config.washout);
    return out;
}

Mat drive_reservoir(const DisorderRealization& d, const ArchitectureSpec& arch, double g,
                    std::span<const double> input, double input_scale, long washout,
                    const Vec& h0) {
    if (!d.candidate_bias_is_zero())
        throw ContractError("reservoir runs require a zero candidate bias (s_c = 0)");
    if (d.k != 1) throw ContractError("scalar input expected (k = 1)");
    if (washout < 0 || washout >= static_cast<long>(input.size()))
        throw ConfigError("need 0 <= washout < input length");
    for (double u : input)
        if (!std::isfinite(u)) throw ConfigError("non-finite input sample");

    const long steps = static_cast<long>(input.size());
    Mat states(steps - washout, d.n);
    Vec h = h0;
    Vec x(1);
    for (long t = 0; t < steps; ++t) {
        x[0] = input_scale * input[static_cast<std::size_t>(t)];
        try {
            h = step(d, arch, g, h, x);
        } catch (BlowupError& e) {
            throw BlowupError(e.what(), t, d.seed);
        }
        if (t >= washout) states.row(t - washout) = h.transpose();
    }
    return states;
}

ReadoutModel fit_ridge(const Mat& features, const Vec& targets, double ridge_lambda) {
    if (features.rows() != targets.size())
        throw ContractError("feature rows must match target length");
    if (features.rows() < 1) throw ContractError("empty training set");
    if (ridge_lambda < 0.0) throw ConfigError("ridge lambda must be >= 0");

    const long rows = features.rows(), cols = features.cols();
    Mat x(rows, cols + 1);
    x.leftCols(cols) = features;
    x.col(cols).setOnes();

    Mat gram = x.transpose() * x;
    for (long i = 0; i < cols; ++i) gram(i, i) += ridge_lambda;  // intercept unpenalized
    const Vec rhs = x.transpose() * targets;

    ReadoutModel model;
    model.ridge_lambda = ridge_lambda;
    model.weights = gram.ldlt().solve(rhs);

    const double rhs_norm = rhs.norm();
    model.normal_residual =
        (gram * model.weights - rhs).norm() / (rhs_norm > 0.0 ? rhs_norm : 1.0);
    if (!model.weights.allFinite() || model.normal_residual > 1e-8) {
        if (ridge_lambda == 0.0)
            throw SingularSystemError(
                "normal equations are singular or ill-conditioned; use ridge_lambda > 0");
        throw NumericalError("ridge normal equations not solved to tolerance",
                             model.normal_residual);
    }
    return model;
}

Vec predict(const ReadoutModel& model, const Mat& features) {
    if (features.cols() + 1 != model.weights.size())
        throw ContractError("feature width does not match readout");
    return (features * model.weights.head(features.cols())).array() +
           model.weights[model.weights.size() - 1];
}

double mean_squared_error(const Vec& predictions, const Vec& targets) {
    if (predictions.size() != targets.size() || predictions.size() == 0)
        throw ContractError("prediction/target length mismatch");
    return (predictions - targets).squaredNorm() / static_cast<double>(targets.size());
}

RcRunResult rc_run(const RcProtocol& proto, double g, double s_b, std::uint64_t seed) {
    NetworkConfig cfg;
    cfg.arch = proto.arch;
    cfg.n = proto.n;
    cfg.k = 1;
    cfg.g = g;
    cfg.bias = BiasScheme::gaussian(s_b);
    cfg.seed = seed;
    cfg.validate();
    if (proto.train_len < 1 || proto.test_len < 1 || proto.res_washout < 0 ||
        proto.mg_washout < 0)
        throw ConfigError("invalid reservoir protocol lengths");

    MackeyGlassConfig mg = proto.mg;
    mg.washout = proto.mg_washout;
    mg.length = proto.res_washout + proto.train_len + proto.test_len + 1;
    const std::vector<double> series = mackey_glass(mg);

    const auto d = realize(cfg);
    const long drive_len = proto.res_washout + proto.train_len + proto.test_len;
    const Mat states = drive_reservoir(d, cfg.spec(), g,
                                       std::span<const double>(series.data(),
                                                               static_cast<std::size_t>(drive_len)),
                                       proto.input_scale, proto.res_washout, Vec::Ones(proto.n));

    // Row t of `states` is the state after consuming u(res_washout + t); the
    // one-step-ahead target is the next sample.
    Vec targets(states.rows());
    for (long t = 0; t < states.rows(); ++t)
        targets[t] = series[static_cast<std::size_t>(proto.res_washout + t + 1)];

    const Mat train_x = states.topRows(proto.train_len);
    const Vec train_y = targets.head(proto.train_len);
    const Mat test_x = states.bottomRows(proto.test_len);
    const Vec test_y = targets.tail(proto.test_len);

    const ReadoutModel model = fit_ridge(train_x, train_y, proto.ridge_lambda);

    RcRunResult res;
    res.g = g;
    res.s_b = s_b;
    res.n = proto.n;
    res.seed = seed;
    res.train_mse = mean_squared_error(predict(model, train_x), train_y);
    res.test_mse = mean_squared_error(predict(model, test_x), test_y);
    return res;
}

SweepResult rc_heatmap(const RcProtocol& proto, std::span<const double> s_b_grid,
                       std::span<const double> g_over_gc_grid, int seeds,
                       std::uint64_t master_seed) {
    if (s_b_grid.empty() || g_over_gc_grid.empty()) throw ConfigError("empty heatmap grid");
    if (seeds < 1) throw ConfigError("seeds must be >= 1");

    const std::size_t cols = g_over_gc_grid.size();
    std::vector<double> gains(s_b_grid.size() * cols, 0.0);
    for (std::size_t si = 0; si < s_b_grid.size(); ++si) {
        const double gc = gc_gaussian_asymptotic(proto.arch, s_b_grid[si]).g_c;
        for (std::size_t gi = 0; gi < cols; ++gi)
            gains[si * cols + gi] = g_over_gc_grid[gi] * gc;
    }

    const long jobs = static_cast<long>(s_b_grid.size() * cols * static_cast<std::size_t>(seeds));
    std::vector<double> job_accuracy(static_cast<std::size_t>(jobs), 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long job = 0; job < jobs; ++job) {
        try {
            const std::size_t cell = static_cast<std::size_t>(job) / seeds;
            const std::size_t si = cell / cols;
            const auto run = rc_run(proto, gains[cell], s_b_grid[si],
                                    derive_seed(master_seed, static_cast<std::uint64_t>(job)));
            job_accuracy[static_cast<std::size_t>(job)] = 1.0 / run.test_mse;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::vector<double>> acc(s_b_grid.size(), std::vector<double>(cols, 0.0));
    for (long job = 0; job < jobs; ++job) {
        const std::size_t cell = static_cast<std::size_t>(job) / seeds;
        acc[cell / cols][cell % cols] += job_accuracy[static_cast<std::size_t>(job)] / seeds;
    }

    SweepResult sweep;
    sweep.columns = {"s_b", "g_over_gc", "g", "normalized_accuracy"};
    for (std::size_t si = 0; si < s_b_grid.size(); ++si) {
        double lo = acc[si][0], hi = acc[si][0];
        for (double v : acc[si]) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (std::size_t gi = 0; gi < cols; ++gi) {
            const double norm = (hi > lo) ? (acc[si][gi] - lo) / (hi - lo) : 1.0;
            sweep.rows.push_back({s_b_grid[si], g_over_gc_grid[gi], gains[si * cols + gi], norm});
        }
    }
    sweep.meta["arch"] = to_string(proto.arch);
    sweep.meta["n"] = std::to_string(proto.n);
    sweep.meta["seeds"] = std::to_string(seeds);
    sweep.meta["seed"] = std::to_string(master_seed);
    sweep.meta["input_scale"] = std::to_string(proto.input_scale);
    sweep.meta["ridge_lambda"] = std::to_string(proto.ridge_lambda);
    return sweep;
}

}  // namespace eoc
