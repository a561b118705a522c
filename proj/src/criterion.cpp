#include "eoc/criterion.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

namespace eoc {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Gauss-Hermite nodes/weights for int e^{-x^2} f(x) dx, by Newton iteration
/// on the orthonormal Hermite recurrence.
struct GhRule {
    std::vector<double> x, w;
};

GhRule gauss_hermite(int n) {
    constexpr double kPim4 = 0.7511255444649425;  // pi^{-1/4}
    constexpr double kEps = 3e-14;
    GhRule rule;
    rule.x.assign(static_cast<std::size_t>(n), 0.0);
    rule.w.assign(static_cast<std::size_t>(n), 0.0);
    const int m = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.x[1];
        else
            z = 2.0 * z - rule.x[static_cast<std::size_t>(i - 2)];
        for (int it = 0; it < 100; ++it) {
            double p1 = kPim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        rule.x[static_cast<std::size_t>(i)] = z;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = -z;
        rule.w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
        rule.w[static_cast<std::size_t>(n - 1 - i)] = rule.w[static_cast<std::size_t>(i)];
    }
    return rule;
}

const GhRule& cached_rule(int n) {
    static std::map<int, GhRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
    return it->second;
}

/// Even moments of the standard logistic density sigma'(u): m_{2k} =
/// 2 (2k)! (1 - 2^{1-2k}) zeta(2k), with m_0 = 1.
double logistic_moment(int k) {
    if (k == 0) return 1.0;
    double zeta = 0.0;
    for (int j = 1; j < 300; ++j) {
        const double term = std::pow(static_cast<double>(j), -2.0 * k);
        zeta += term;
        if (term < 1e-18 * zeta) break;
    }
    return 2.0 * std::tgamma(2.0 * k + 1.0) * (1.0 - std::pow(2.0, 1.0 - 2.0 * k)) * zeta;
}

/// <sigma(b)(1 - sigma(b))> for wide b ~ N(0, s^2) by the moment expansion of
/// the narrow logistic bump against the flat Gaussian: asymptotic series in
/// 1/(2 s^2), truncated at its smallest term (below 1e-12 for s >= 7).
double sigma_times_complement_mean_wide(double s) {
    const double pref = 1.0 / (s * std::sqrt(2.0 * M_PI));
    double sum = 0.0, prev_term = std::numeric_limits<double>::infinity();
    double factor = 1.0;  // (-1)^k / (k! (2 s^2)^k)
    for (int k = 0; k < 60; ++k) {
        const double term = factor * logistic_moment(k);
        if (std::abs(term) > prev_term) break;  // asymptotic series started diverging
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        prev_term = std::abs(term);
        factor *= -1.0 / ((k + 1.0) * 2.0 * s * s);
    }
    return pref * sum;
}

}  // namespace

double gaussian_expectation(const std::function<double(double)>& f, double sd, double tol,
                            int max_order) {
    if (sd < 0.0) throw ConfigError("gaussian sd must be >= 0");
    if (sd == 0.0) return f(0.0);
    const double scale = std::sqrt(2.0) * sd;
    double prev = std::numeric_limits<double>::quiet_NaN();
    double achieved = std::numeric_limits<double>::infinity();
    for (int n = 16; n <= max_order; n *= 2) {
        const auto& rule = cached_rule(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += rule.w[static_cast<std::size_t>(i)] * f(scale * rule.x[static_cast<std::size_t>(i)]);
        const double cur = acc / std::sqrt(M_PI);
        if (!std::isnan(prev)) {
            achieved = std::abs(cur - prev);
            if (achieved < tol * std::max(1.0, std::abs(cur))) return cur;
        }
        prev = cur;
    }
    throw NumericalError("gaussian quadrature did not converge", achieved);
}

DiagonalTriple extract_mlr(const DisorderRealization& d, const ArchitectureSpec& arch) {
    DiagonalTriple t;
    switch (arch.kind) {
        case Arch::Rnn:
            t.m = Vec::Zero(d.n);
            t.l = Vec::Ones(d.n);
            t.r = Vec::Ones(d.n);
            t.m_complement = Vec::Ones(d.n);
            return t;
        case Arch::Lstm: {
            const Vec& bf = d.bias(Gate::Forget);
            const Vec& bi = d.bias(Gate::Input);
            const Vec& bo = d.bias(Gate::Output);
            t.m = bf.unaryExpr([](double b) { return sigmoid(b); });
            t.m_complement = bf.unaryExpr([](double b) { return sigmoid(-b); });
            t.l = bi.unaryExpr([](double b) { return sigmoid(b); });
            t.r = bo.unaryExpr([](double b) { return sigmoid(b); });
            return t;
        }
        case Arch::Gru: {
            const Vec& bz = d.bias(Gate::Update);
            const Vec& br = d.bias(Gate::Reset);
            t.l = bz.unaryExpr([](double b) { return sigmoid(b); });
            t.m_complement = t.l;  // 1 - M = sigmoid(b_update), bitwise
            t.m = Vec::Ones(d.n) - t.l;
            t.r = br.unaryExpr([](double b) { return sigmoid(b); });
            return t;
        }
    }
    throw ContractError("unknown architecture");
}

double boundary_sum(const DiagonalTriple& t, double g, std::complex<double> z) {
    const int n = t.n();
    if (n < 1) throw ContractError("empty triple");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double den = std::norm(z - std::complex<double>(t.m[i], 0.0));
        if (den == 0.0) throw PoleError("z coincides with a diagonal entry of M");
        const double num = t.l[i] * t.l[i] * t.r[i] * t.r[i];
        acc += num / den;
    }
    return g * g * acc / n;
}

double regularized_boundary_sum(const DiagonalTriple& t, double g, std::complex<double> z,
                                double reg) {
    if (reg < 0.0) throw ConfigError("regularizer must be >= 0");
    if (reg == 0.0) return boundary_sum(t, g, z);
    const int n = t.n();
    if (n < 1) throw ContractError("empty triple");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lr = t.l[i] * t.r[i];
        const double sv2 = std::norm(z - std::complex<double>(t.m[i], 0.0)) / (lr * lr);
        acc += 1.0 / (sv2 + reg * reg);
    }
    return g * g * acc / n;
}

CriticalGainPrediction critical_gain(const DiagonalTriple& t) {
    const int n = t.n();
    if (n < 1) throw ContractError("empty triple");
    const bool have_complement = t.m_complement.size() == t.m.size();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (t.m[i] >= 1.0) throw DomainError("critical gain undefined: some M_i >= 1");
        const double comp = have_complement ? t.m_complement[i] : 1.0 - t.m[i];
        // (l / comp) first: when L and 1 - M coincide structurally the factors
        // cancel exactly and the summand reduces to R_i^2.
        const double ratio = (t.l[i] / comp) * t.r[i];
        acc += ratio * ratio;
    }
    CriticalGainPrediction p;
    p.g_c = 1.0 / std::sqrt(acc / n);
    p.mode = CriticalGainPrediction::Mode::FiniteN;
    p.n = n;
    return p;
}

double sigma_sq_mean(double s_b) {
    if (s_b < 0.0) throw ConfigError("s_b must be >= 0");
    if (s_b == 0.0) return 0.25;
    // Gauss-Hermite resolves the sigmoid's unit scale only while the Gaussian
    // is not too wide; past that, use <sigma^2> = 1/2 - <sigma(1-sigma)> with
    // the wide-spread expansion of the second term.
    if (s_b <= 7.0)
        return gaussian_expectation([](double b) { const double s = sigmoid(b); return s * s; },
                                    s_b);
    return 0.5 - sigma_times_complement_mean_wide(s_b);
}

double inv_one_minus_sigmoid_sq_mean(double s_b, bool* overflowed) {
    if (s_b < 0.0) throw ConfigError("s_b must be >= 0");
    const double v = 1.0 + 2.0 * std::exp(s_b * s_b / 2.0) + std::exp(2.0 * s_b * s_b);
    if (overflowed) *overflowed = std::isinf(v);
    return v;
}

CriticalGainPrediction gc_gaussian_asymptotic(Arch arch, double s_b) {
    if (s_b < 0.0) throw ConfigError("s_b must be >= 0");
    CriticalGainPrediction p;
    p.mode = CriticalGainPrediction::Mode::Asymptotic;
    p.arch = arch;
    p.scheme = BiasScheme::gaussian(s_b);
    switch (arch) {
        case Arch::Rnn:
            p.g_c = 1.0;
            return p;
        case Arch::Gru:
            p.g_c = 1.0 / std::sqrt(sigma_sq_mean(s_b));
            return p;
        case Arch::Lstm: {
            // Independent (b_forget, b_input, b_output) factor the expectation
            // of the summand into three 1-D integrals.
            const double l2 = sigma_sq_mean(s_b);
            const double r2 = sigma_sq_mean(s_b);
            const double invm2 = (s_b == 0.0)
                                     ? 4.0
                                     : gaussian_expectation(
                                           [](double b) {
                                               const double e = 1.0 + std::exp(b);
                                               return e * e;
                                           },
                                           s_b);
            p.g_c = 1.0 / std::sqrt(l2 * r2 * invm2);
            return p;
        }
    }
    throw ContractError("unknown architecture");
}

MonotonicityReport monotonicity_check(std::span<const double> s_b_grid) {
    if (s_b_grid.empty()) throw ConfigError("empty s_b grid");
    for (std::size_t i = 0; i < s_b_grid.size(); ++i) {
        if (s_b_grid[i] < 0.0) throw ConfigError("s_b grid entries must be >= 0");
        if (i > 0 && !(s_b_grid[i] > s_b_grid[i - 1]))
            throw ConfigError("s_b grid must be strictly increasing");
    }
    MonotonicityReport rep;
    if (s_b_grid.size() == 1) {
        rep.strictly_increasing = true;
        rep.min_margin = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.strictly_increasing = true;
    rep.min_margin = std::numeric_limits<double>::infinity();
    double prev = sigma_sq_mean(s_b_grid[0]);
    for (std::size_t i = 1; i < s_b_grid.size(); ++i) {
        const double cur = sigma_sq_mean(s_b_grid[i]);
        rep.min_margin = std::min(rep.min_margin, cur - prev);
        if (!(cur > prev)) rep.strictly_increasing = false;
        prev = cur;
    }
    return rep;
}

}  // namespace eoc
