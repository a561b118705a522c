#include "eoc/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eoc {

namespace {

Vec perturbation_direction(const DisorderRealization& d) {
    GaussianStream gs(d.seed, "benettin.direction");
    Vec v(d.n);
    for (int i = 0; i < d.n; ++i) v[i] = gs.next();
    const double norm = v.norm();
    if (norm == 0.0) return Vec::Unit(d.n, 0);
    return v / norm;
}

double bisect_on(const std::function<double(double)>& lambda_of_g, double lo, double hi,
                 double llo, double lhi, double tol_g) {
    // Private bracket repair: widen geometrically until the signs differ.
    int tries = 0;
    while (llo >= 0.0 && lo > 1e-18 && tries++ < 60) {
        hi = lo;
        lhi = llo;
        lo *= 0.5;
        llo = lambda_of_g(lo);
    }
    tries = 0;
    while (lhi <= 0.0 && tries++ < 8) {
        lo = hi;
        llo = lhi;
        hi *= 1.5;
        lhi = lambda_of_g(hi);
    }
    if (llo >= 0.0 || lhi <= 0.0) {
        std::ostringstream msg;
        msg << "no sign change: lambda(" << lo << ") = " << llo << ", lambda(" << hi
            << ") = " << lhi;
        throw BracketError(msg.str());
    }
    while (hi - lo > tol_g) {
        const double mid = 0.5 * (lo + hi);
        if (lambda_of_g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LyapunovEstimate summarize_increments(const std::vector<double>& increments, double g,
                                      long transient, double eps) {
    LyapunovEstimate est;
    est.g = g;
    est.transient = transient;
    est.eps = eps;
    est.steps_used = static_cast<long>(increments.size());
    if (increments.empty()) return est;

    double sum = 0.0;
    for (double v : increments) sum += v;
    est.lambda_max = sum / static_cast<double>(increments.size());

    const long n = est.steps_used;
    const int batches = static_cast<int>(std::clamp<long>(n / 10, 2, 30));
    const long m = n / batches;
    if (m >= 1 && batches >= 2) {
        std::vector<double> means(static_cast<std::size_t>(batches), 0.0);
        for (int b = 0; b < batches; ++b) {
            double s = 0.0;
            for (long i = b * m; i < (b + 1) * m; ++i) s += increments[static_cast<std::size_t>(i)];
            means[static_cast<std::size_t>(b)] = s / static_cast<double>(m);
        }
        const auto ci = mean_ci95(means);
        est.stderr_ = ci.sd / std::sqrt(static_cast<double>(batches));
    }
    return est;
}

LyapunovEstimate benettin_lambda_max(const DisorderRealization& d, const ArchitectureSpec& arch,
                                     double g, const Vec& h0, long steps, long transient,
                                     double eps) {
    if (h0.size() != d.n) throw ContractError("h0 dimension does not match realization");
    const Mat no_input(0, 0);
    auto est = benettin_core(
        [&](const Mat& h) { return step_batch(d, arch, g, h, no_input); }, h0,
        perturbation_direction(d), steps, transient, eps);
    est.g = g;
    return est;
}

LyapunovEstimate replica_lambda(const NetworkConfig& base, double g, int replicas,
                                const BenettinParams& bp) {
    base.validate();
    if (replicas < 1) throw ConfigError("replicas must be >= 1");
    std::vector<double> lams(static_cast<std::size_t>(replicas), 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicas; ++r) {
        try {
            NetworkConfig cfg = base;
            cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(r));
            const auto d = realize(cfg);
            lams[static_cast<std::size_t>(r)] = benettin_lambda_max(
                d, base.spec(), g, Vec::Ones(base.n), bp.steps, bp.transient, bp.eps).lambda_max;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const auto ci = mean_ci95(lams);
    LyapunovEstimate est;
    est.g = g;
    est.lambda_max = ci.mean;
    est.stderr_ = (replicas > 1) ? ci.sd / std::sqrt(static_cast<double>(replicas)) : 0.0;
    est.steps_used = bp.steps - bp.transient;
    est.transient = bp.transient;
    est.replicas = replicas;
    est.eps = bp.eps;
    return est;
}

CrossingEstimate find_crossing(const NetworkConfig& base, double g_lo, double g_hi, double tol_g,
                               int replicas, const BenettinParams& bp, CrossingMode mode) {
    base.validate();
    if (!(g_lo < g_hi)) throw ConfigError("need g_lo < g_hi");
    if (!(tol_g > 0.0)) throw ConfigError("need tol_g > 0");
    if (replicas < 1) throw ConfigError("replicas must be >= 1");

    const auto spec = base.spec();
    std::vector<DisorderRealization> reals;
    reals.reserve(static_cast<std::size_t>(replicas));
    for (int r = 0; r < replicas; ++r) {
        NetworkConfig cfg = base;
        cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(r));
        reals.push_back(realize(cfg));
    }
    const Vec h0 = Vec::Ones(base.n);
    auto lambda_of = [&](int r, double g) {
        return benettin_lambda_max(reals[static_cast<std::size_t>(r)], spec, g, h0, bp.steps,
                                   bp.transient, bp.eps).lambda_max;
    };

    // Endpoint exponents for every replica; the bracket precondition is on the
    // replica average.
    std::vector<double> llo(static_cast<std::size_t>(replicas)), lhi(llo);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < 2 * replicas; ++r) {
        try {
            const int rep = r / 2;
            if (r % 2 == 0)
                llo[static_cast<std::size_t>(rep)] = lambda_of(rep, g_lo);
            else
                lhi[static_cast<std::size_t>(rep)] = lambda_of(rep, g_hi);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const double mean_lo = mean_ci95(llo).mean, mean_hi = mean_ci95(lhi).mean;
    if (!(mean_lo < 0.0 && mean_hi > 0.0)) {
        std::ostringstream msg;
        msg << "bracket does not enclose the transition: mean lambda(" << g_lo
            << ") = " << mean_lo << ", mean lambda(" << g_hi << ") = " << mean_hi;
        throw BracketError(msg.str());
    }

    CrossingEstimate out;
    out.s_b = (base.bias.kind == BiasScheme::Kind::Gaussian) ? base.bias.s_b : 0.0;
    out.g_lo = g_lo;
    out.g_hi = g_hi;
    out.replicas = replicas;
    out.per_replica.assign(static_cast<std::size_t>(replicas), 0.0);

    if (mode == CrossingMode::PerReplica) {
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < replicas; ++r) {
            try {
                out.per_replica[static_cast<std::size_t>(r)] =
                    bisect_on([&](double g) { return lambda_of(r, g); }, g_lo, g_hi,
                              llo[static_cast<std::size_t>(r)], lhi[static_cast<std::size_t>(r)],
                              tol_g);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        const auto ci = mean_ci95(out.per_replica);
        out.g_star = ci.mean;
        out.ci95_halfwidth = ci.ci95_halfwidth;
    } else {
        // Shared bracket: bisect on the replica average, then interpolate a
        // per-replica crossing inside the final bracket for the error bar.
        double lo = g_lo, hi = g_hi;
        while (hi - lo > tol_g) {
            const double mid = 0.5 * (lo + hi);
            std::vector<double> lmid(static_cast<std::size_t>(replicas), 0.0);
#pragma omp parallel for schedule(dynamic)
            for (int r = 0; r < replicas; ++r) {
                try {
                    lmid[static_cast<std::size_t>(r)] = lambda_of(r, mid);
                } catch (...) {
#pragma omp critical
                    if (!failure) failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            if (mean_ci95(lmid).mean < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        std::vector<double> flo(static_cast<std::size_t>(replicas)), fhi(flo);
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < 2 * replicas; ++r) {
            try {
                const int rep = r / 2;
                if (r % 2 == 0)
                    flo[static_cast<std::size_t>(rep)] = lambda_of(rep, lo);
                else
                    fhi[static_cast<std::size_t>(rep)] = lambda_of(rep, hi);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        for (int r = 0; r < replicas; ++r) {
            const double a = flo[static_cast<std::size_t>(r)], b = fhi[static_cast<std::size_t>(r)];
            double c = (b > a) ? lo + (hi - lo) * (0.0 - a) / (b - a) : 0.5 * (lo + hi);
            out.per_replica[static_cast<std::size_t>(r)] = std::clamp(c, lo, hi);
        }
        out.g_star = 0.5 * (lo + hi);
        out.ci95_halfwidth = mean_ci95(out.per_replica).ci95_halfwidth;
    }
    return out;
}

}  // namespace eoc
