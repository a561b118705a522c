#include "eoc/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "eoc/io.hpp"
#include "eoc/lyapunov.hpp"
#include "eoc/observables.hpp"
#include "eoc/reservoir.hpp"
#include "eoc/spectrum.hpp"
#include "eoc/stats.hpp"

namespace eoc {

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw ConfigError("empty value list '" + s + "'");
    return out;
}

/// Options shared by every experiment subcommand.
struct CommonOpts {
    std::string arch = "lstm";
    std::string bias = "zero";
    double s_b = 0.0;
    double s_c = 0.0;
    double t_max = 100.0;
    std::string chrono_output = "zero";
    double s_o = 0.0;
    int n = 1000;
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string out = "-";
    std::string format = "csv";

    void attach(CLI::App* cmd, bool with_output = true) {
        cmd->add_option("--arch", arch, "Architecture: rnn, lstm or gru")
            ->capture_default_str();
        cmd->add_option("--bias", bias, "Bias scheme: zero, gaussian or chrono")
            ->capture_default_str();
        cmd->add_option("--sb", s_b, "Gate-bias standard deviation (gaussian scheme)")
            ->capture_default_str();
        cmd->add_option("--sc", s_c, "Candidate-bias standard deviation")
            ->capture_default_str();
        cmd->add_option("--tmax", t_max, "Chrono timescale upper bound (> 2)")
            ->capture_default_str();
        cmd->add_option("--chrono-output", chrono_output,
                        "Chrono output-gate bias: zero or gaussian")
            ->capture_default_str();
        cmd->add_option("--so", s_o, "Chrono output-gate bias sd (gaussian)")
            ->capture_default_str();
        cmd->add_option("-n,--n", n, "Hidden size")->capture_default_str();
        cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
        cmd->add_option("--jobs", jobs, "Worker thread cap (0 = all cores)")
            ->capture_default_str();
        if (with_output) {
            cmd->add_option("-o,--out", out, "Output path ('-' = stdout)")
                ->capture_default_str();
            cmd->add_option("--format", format, "Output format: csv or json")
                ->capture_default_str();
        }
    }

    BiasScheme scheme() const {
        if (bias == "zero") return BiasScheme::zero(s_c);
        if (bias == "gaussian") return BiasScheme::gaussian(s_b, s_c);
        if (bias == "chrono") {
            if (chrono_output == "zero") return BiasScheme::chrono(t_max);
            if (chrono_output == "gaussian")
                return BiasScheme::chrono(t_max, BiasScheme::Kind::Gaussian, s_o);
            throw ConfigError("unknown chrono output scheme '" + chrono_output + "'");
        }
        throw ConfigError("unknown bias scheme '" + bias + "' (expected zero, gaussian or chrono)");
    }

    NetworkConfig config(double s_b_override = -1.0) const {
        NetworkConfig cfg;
        cfg.arch = arch_from_string(arch);
        cfg.n = n;
        cfg.k = 1;
        cfg.seed = seed;
        cfg.bias = scheme();
        if (s_b_override >= 0.0) {
            cfg.bias.kind = BiasScheme::Kind::Gaussian;
            cfg.bias.s_b = s_b_override;
        }
        return cfg;
    }

    void apply_jobs() const {
        int j = jobs;
        if (const char* env = std::getenv("EOC_JOBS"); env && j == 0) j = std::atoi(env);
        if (j > 0) omp_set_num_threads(j);
    }

    std::string resolved_out() const {
        if (out.empty() || out == "-") return out;
        if (const char* dir = std::getenv("EOC_OUTDIR"); dir && out.front() != '/')
            return std::string(dir) + "/" + out;
        return out;
    }

    void describe(SweepResult& sweep) const {
        sweep.meta["arch"] = arch;
        sweep.meta["bias"] = bias;
        sweep.meta["s_b"] = format_double(s_b);
        sweep.meta["s_c"] = format_double(s_c);
        if (bias == "chrono") {
            sweep.meta["t_max"] = format_double(t_max);
            sweep.meta["chrono_output"] = chrono_output;
            sweep.meta["s_o"] = format_double(s_o);
        }
        sweep.meta["n"] = std::to_string(n);
        sweep.meta["seed"] = std::to_string(seed);
    }
};

int cmd_gc(const CommonOpts& opt, const std::string& mode, bool as_json, bool verbose) {
    const Arch arch = arch_from_string(opt.arch);
    const BiasScheme scheme = opt.scheme();

    CriticalGainPrediction pred;
    DiagonalTriple triple;
    if (mode == "asymptotic") {
        pred = gc_asymptotic(arch, scheme);
    } else if (mode == "finite") {
        NetworkConfig cfg = opt.config();
        cfg.validate();
        const auto d = realize(cfg);
        triple = extract_mlr(d, cfg.spec());
        pred = critical_gain(triple);
        pred.arch = arch;
        pred.scheme = scheme;
        pred.seed = cfg.seed;
    } else {
        throw ConfigError("unknown mode '" + mode + "' (expected asymptotic or finite)");
    }

    if (as_json) {
        nlohmann::json j;
        j["g_c"] = pred.g_c;
        j["mode"] = (pred.mode == CriticalGainPrediction::Mode::FiniteN) ? "finite_n" : "asymptotic";
        j["arch"] = to_string(arch);
        j["bias"] = opt.bias;
        j["s_b"] = scheme.s_b;
        j["s_c"] = scheme.s_c;
        if (scheme.kind == BiasScheme::Kind::Chrono) j["t_max"] = scheme.t_max;
        if (pred.mode == CriticalGainPrediction::Mode::FiniteN) {
            j["n"] = pred.n;
            j["seed"] = pred.seed;
        }
        j["quadrature_tol"] = 1e-10;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << format_double(pred.g_c) << "\n";
        if (verbose && triple.n() > 0) {
            auto stat = [](const Vec& v, const char* name) {
                std::cout << "# " << name << ": mean=" << format_double(v.mean())
                          << " min=" << format_double(v.minCoeff())
                          << " max=" << format_double(v.maxCoeff()) << "\n";
            };
            stat(triple.m, "M");
            stat(triple.l, "L");
            stat(triple.r, "R");
        }
    }
    return 0;
}

int cmd_qinf(const CommonOpts& opt, const std::vector<double>& gains, long steps, int replicas,
             long tail_window) {
    opt.apply_jobs();
    SweepResult sweep;
    sweep.columns = {"g", "s_b", "s_c", "n", "steps", "replicas", "mean_q_inf", "ci95"};
    const NetworkConfig cfg = opt.config();
    for (double g : gains) {
        const auto est = estimate_q_inf(cfg, g, steps, replicas, tail_window);
        sweep.rows.push_back({g, cfg.bias.s_b, cfg.bias.s_c, static_cast<double>(cfg.n),
                              static_cast<double>(steps), static_cast<double>(replicas),
                              est.mean_q_inf, est.ci95_halfwidth});
    }
    opt.describe(sweep);
    sweep.meta["steps"] = std::to_string(steps);
    sweep.meta["replicas"] = std::to_string(replicas);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());
    return 0;
}

int cmd_lyapunov(const CommonOpts& opt, const std::vector<double>& gains, bool bisect,
                 std::pair<double, double> bracket, double tol_g, int replicas,
                 const BenettinParams& bp, const std::string& crossing_mode) {
    opt.apply_jobs();
    const NetworkConfig cfg = opt.config();
    SweepResult sweep;
    if (!bisect) {
        sweep.columns = {"s_b", "g", "lambda_max", "stderr", "n", "steps", "eps", "seed"};
        for (double g : gains) {
            const auto est = replica_lambda(cfg, g, replicas, bp);
            sweep.rows.push_back({cfg.bias.s_b, g, est.lambda_max, est.stderr_,
                                  static_cast<double>(cfg.n), static_cast<double>(bp.steps),
                                  bp.eps, static_cast<double>(cfg.seed)});
        }
    } else {
        const CrossingMode mode = (crossing_mode == "shared") ? CrossingMode::SharedBracket
                                                              : CrossingMode::PerReplica;
        const auto cross =
            find_crossing(cfg, bracket.first, bracket.second, tol_g, replicas, bp, mode);
        sweep.columns = {"s_b", "g_star", "ci95", "g_lo", "g_hi", "replicas", "n"};
        sweep.rows.push_back({cross.s_b, cross.g_star, cross.ci95_halfwidth, cross.g_lo,
                              cross.g_hi, static_cast<double>(cross.replicas),
                              static_cast<double>(cfg.n)});
    }
    opt.describe(sweep);
    sweep.meta["steps"] = std::to_string(bp.steps);
    sweep.meta["transient"] = std::to_string(bp.transient);
    sweep.meta["eps"] = format_double(bp.eps);
    sweep.meta["replicas"] = std::to_string(replicas);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());
    return 0;
}

int cmd_phase(const CommonOpts& opt, const std::vector<double>& s_b_grid,
              const std::string& mode, std::optional<std::pair<double, double>> bracket,
              double tol_g, int replicas, const BenettinParams& bp) {
    opt.apply_jobs();
    const Arch arch = arch_from_string(opt.arch);
    const bool want_pred = (mode == "pred" || mode == "both");
    const bool want_emp = (mode == "emp" || mode == "both");
    if (!want_pred && !want_emp)
        throw ConfigError("unknown mode '" + mode + "' (expected pred, emp or both)");

    SweepResult sweep;
    sweep.columns = {"s_b"};
    if (want_pred) {
        sweep.columns.push_back("gc_asymptotic");
        sweep.columns.push_back("gc_finite_mean");
    }
    if (want_emp) {
        sweep.columns.push_back("g_star");
        sweep.columns.push_back("ci95");
    }

    for (double s_b : s_b_grid) {
        std::vector<double> row = {s_b};
        const NetworkConfig cfg = opt.config(s_b);
        double finite_mean = 0.0;
        if (want_pred) {
            row.push_back(gc_gaussian_asymptotic(arch, s_b).g_c);
            // Finite-size prediction averaged over the same replica seeds the
            // empirical estimate uses.
            std::vector<double> per;
            for (int r = 0; r < replicas; ++r) {
                NetworkConfig rc = cfg;
                rc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
                per.push_back(critical_gain(extract_mlr(realize(rc), cfg.spec())).g_c);
            }
            finite_mean = mean_ci95(per).mean;
            row.push_back(finite_mean);
        }
        if (want_emp) {
            double lo, hi;
            if (bracket) {
                lo = bracket->first;
                hi = bracket->second;
            } else {
                // Auto-bracket around the finite-size prediction.
                std::vector<double> per;
                for (int r = 0; r < replicas; ++r) {
                    NetworkConfig rc = cfg;
                    rc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
                    per.push_back(critical_gain(extract_mlr(realize(rc), cfg.spec())).g_c);
                }
                const double center = want_pred ? finite_mean : mean_ci95(per).mean;
                lo = 0.5 * center;
                hi = 1.6 * center;
            }
            const auto cross = find_crossing(cfg, lo, hi, tol_g, replicas, bp);
            row.push_back(cross.g_star);
            row.push_back(cross.ci95_halfwidth);
        }
        sweep.rows.push_back(row);
    }
    opt.describe(sweep);
    sweep.meta["mode"] = mode;
    sweep.meta["replicas"] = std::to_string(replicas);
    sweep.meta["steps"] = std::to_string(bp.steps);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());
    return 0;
}

int cmd_spectrum(const CommonOpts& opt, const std::vector<double>& gains, int replicas,
                 const std::string& dump_eigs) {
    opt.apply_jobs();
    const NetworkConfig cfg = opt.config();
    const auto sweep_base = radius_vs_gain_sweep(cfg, gains, replicas);
    SweepResult sweep = sweep_base;
    opt.describe(sweep);
    sweep.meta["replicas"] = std::to_string(replicas);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());

    if (!dump_eigs.empty()) {
        const auto d = realize(cfg);
        const auto jm = build_jacobian(d, cfg.spec(), gains.front());
        const auto eigs = eigenvalues_dense(jm.j);
        SweepResult dump;
        dump.columns = {"re", "im"};
        for (const auto& e : eigs) dump.rows.push_back({e.real(), e.imag()});
        dump.meta["g"] = format_double(gains.front());
        opt.describe(dump);
        write_results(dump, OutputFormat::Csv, dump_eigs);
    }
    return 0;
}

int cmd_reservoir(const CommonOpts& opt, RcProtocol proto, const std::vector<double>& s_b_grid,
                  const std::vector<double>& ratios, int seeds, bool heatmap) {
    opt.apply_jobs();
    proto.arch = arch_from_string(opt.arch);
    proto.n = opt.n;

    if (heatmap) {
        auto sweep = rc_heatmap(proto, s_b_grid, ratios, seeds, opt.seed);
        opt.describe(sweep);
        write_results(sweep, format_from_string(opt.format), opt.resolved_out());
        return 0;
    }

    SweepResult sweep;
    sweep.columns = {"s_b", "g", "g_over_gc", "n", "seed", "train_mse", "test_mse"};
    struct Job {
        double s_b, ratio, g;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (double s_b : s_b_grid) {
        const double gc = gc_gaussian_asymptotic(proto.arch, s_b).g_c;
        for (double ratio : ratios)
            for (int s = 0; s < seeds; ++s)
                jobs.push_back({s_b, ratio, ratio * gc,
                                derive_seed(opt.seed, jobs.size())});
    }
    std::vector<RcRunResult> results(jobs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
        try {
            const auto& j = jobs[static_cast<std::size_t>(i)];
            results[static_cast<std::size_t>(i)] = rc_run(proto, j.g, j.s_b, j.seed);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        const auto& r = results[i];
        sweep.rows.push_back({j.s_b, j.g, j.ratio, static_cast<double>(proto.n),
                              static_cast<double>(j.seed), r.train_mse, r.test_mse});
    }
    opt.describe(sweep);
    sweep.meta["seeds"] = std::to_string(seeds);
    sweep.meta["input_scale"] = format_double(proto.input_scale);
    sweep.meta["ridge_lambda"] = format_double(proto.ridge_lambda);
    sweep.meta["train_len"] = std::to_string(proto.train_len);
    sweep.meta["test_len"] = std::to_string(proto.test_len);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());
    return 0;
}

int cmd_mackey_glass(const CommonOpts& opt, MackeyGlassConfig mg) {
    const auto series = mackey_glass(mg);
    SweepResult sweep;
    sweep.columns = {"t", "u"};
    for (std::size_t t = 0; t < series.size(); ++t)
        sweep.rows.push_back({static_cast<double>(t), series[t]});
    sweep.meta["beta"] = format_double(mg.beta);
    sweep.meta["gamma"] = format_double(mg.gamma);
    sweep.meta["n_exp"] = format_double(mg.n_exp);
    sweep.meta["tau"] = std::to_string(mg.tau);
    sweep.meta["history_init"] = format_double(mg.history_init);
    sweep.meta["washout"] = std::to_string(mg.washout);
    write_results(sweep, format_from_string(opt.format), opt.resolved_out());
    return 0;
}

}  // namespace

CriticalGainPrediction gc_asymptotic(Arch arch, const BiasScheme& scheme) {
    scheme.validate();
    CriticalGainPrediction p;
    p.mode = CriticalGainPrediction::Mode::Asymptotic;
    p.arch = arch;
    p.scheme = scheme;
    switch (scheme.kind) {
        case BiasScheme::Kind::Zero:
            p.g_c = (arch == Arch::Rnn) ? 1.0 : 2.0;
            return p;
        case BiasScheme::Kind::Gaussian:
            return gc_gaussian_asymptotic(arch, scheme.s_b);
        case BiasScheme::Kind::Chrono: {
            if (arch != Arch::Lstm)
                throw ConfigError("chrono initialization is defined for the LSTM only");
            // Timescale factors cancel; only the output-gate bias survives.
            const double r2 = (scheme.output_kind == BiasScheme::Kind::Gaussian)
                                  ? sigma_sq_mean(scheme.s_o)
                                  : 0.25;
            p.g_c = 1.0 / std::sqrt(r2);
            return p;
        }
    }
    throw ContractError("unknown bias scheme");
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Critical-gain analysis and edge-of-chaos experiments for gated recurrent networks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file (sections per subcommand)");
    app.failure_message(CLI::FailureMessage::simple);

    // --- gc ---
    auto* gc = app.add_subcommand("gc", "Predicted critical gain for a bias scheme");
    CommonOpts gc_opt;
    gc_opt.attach(gc, /*with_output=*/false);
    std::string gc_mode = "asymptotic";
    bool gc_json = false, gc_verbose = false;
    gc->add_option("--mode", gc_mode, "asymptotic (large-N) or finite (sampled triple)")
        ->capture_default_str();
    gc->add_flag("--json", gc_json, "Emit JSON instead of the bare value");
    gc->add_flag("-v,--verbose", gc_verbose, "Also print triple summary statistics (finite mode)");

    // --- qinf ---
    auto* qinf = app.add_subcommand("qinf", "Long-time mean-square activity vs gain");
    CommonOpts qinf_opt;
    qinf_opt.attach(qinf);
    std::string qinf_g = "1.0";
    long qinf_steps = 4000, qinf_tail = 0;
    int qinf_replicas = 10;
    qinf->add_option("-g,--g", qinf_g, "Comma-separated gains")->capture_default_str();
    qinf->add_option("-T,--steps", qinf_steps, "Evolution steps per replica")->capture_default_str();
    qinf->add_option("--replicas", qinf_replicas, "Disorder replicas")->capture_default_str();
    qinf->add_option("--tail-window", qinf_tail,
                     "Averaging window (0 = min(steps/4, 500))")
        ->capture_default_str();

    // --- lyapunov ---
    auto* lyap = app.add_subcommand("lyapunov", "Maximal Lyapunov exponent (grid or bisection)");
    CommonOpts lyap_opt;
    lyap_opt.attach(lyap);
    std::string lyap_g = "1.0,1.5,2.0,2.5,3.0";
    bool lyap_bisect = false;
    std::vector<double> lyap_bracket = {1.0, 3.0};
    double lyap_tol = 5e-3;
    int lyap_replicas = 10;
    std::string lyap_cross_mode = "per-replica";
    BenettinParams lyap_bp;
    lyap->add_option("-g,--g", lyap_g, "Comma-separated gains (grid mode)")->capture_default_str();
    lyap->add_flag("--bisect", lyap_bisect, "Bisect for the zero crossing instead of a grid");
    lyap->add_option("--bracket", lyap_bracket, "Bisection bracket g_lo g_hi")
        ->expected(2)
        ->capture_default_str();
    lyap->add_option("--tol-g", lyap_tol, "Bisection gain tolerance")->capture_default_str();
    lyap->add_option("--replicas", lyap_replicas, "Disorder replicas")->capture_default_str();
    lyap->add_option("--crossing-mode", lyap_cross_mode,
                     "per-replica (own disorder per replica) or shared (average bracket)")
        ->capture_default_str();
    lyap->add_option("-T,--steps", lyap_bp.steps, "Benettin steps")->capture_default_str();
    lyap->add_option("--transient", lyap_bp.transient, "Discarded leading steps")
        ->capture_default_str();
    lyap->add_option("--eps", lyap_bp.eps, "Perturbation size")->capture_default_str();

    // --- phase ---
    auto* phase = app.add_subcommand("phase", "Critical gain vs gaussian bias spread");
    CommonOpts phase_opt;
    phase_opt.attach(phase);
    std::string phase_sb = "0,1,2,3";
    std::string phase_mode = "both";
    std::vector<double> phase_bracket;
    double phase_tol = 5e-3;
    int phase_replicas = 10;
    BenettinParams phase_bp;
    phase->add_option("--sb-grid", phase_sb, "Comma-separated bias spreads")->capture_default_str();
    phase->add_option("--mode", phase_mode, "pred, emp or both")->capture_default_str();
    phase->add_option("--bracket", phase_bracket,
                      "Bisection bracket g_lo g_hi (default: auto around the prediction)")
        ->expected(2);
    phase->add_option("--tol-g", phase_tol, "Bisection gain tolerance")->capture_default_str();
    phase->add_option("--replicas", phase_replicas, "Disorder replicas")->capture_default_str();
    phase->add_option("-T,--steps", phase_bp.steps, "Benettin steps")->capture_default_str();
    phase->add_option("--transient", phase_bp.transient, "Discarded leading steps")
        ->capture_default_str();
    phase->add_option("--eps", phase_bp.eps, "Perturbation size")->capture_default_str();

    // --- spectrum ---
    auto* spec = app.add_subcommand("spectrum", "Spectral radius of the origin Jacobian vs gain");
    CommonOpts spec_opt;
    spec_opt.attach(spec);
    std::string spec_g = "1.0,1.5,2.0,2.5";
    int spec_replicas = 5;
    std::string spec_dump;
    spec->add_option("-g,--g", spec_g, "Comma-separated gains")->capture_default_str();
    spec->add_option("--replicas", spec_replicas, "Disorder replicas")->capture_default_str();
    spec->add_option("--dump-eigs", spec_dump,
                     "Write all eigenvalues of one realization at the first gain (n <= 300)");

    // --- reservoir ---
    auto* rc = app.add_subcommand("reservoir", "Mackey-Glass prediction benchmark");
    CommonOpts rc_opt;
    rc_opt.attach(rc);
    RcProtocol rc_proto;
    std::string rc_sb = "0";
    std::string rc_ratios = "0.5,0.75,0.9,1.0,1.1,1.25,1.5,2.0";
    int rc_seeds = 5;
    bool rc_heat = false;
    rc->add_option("--sb-grid", rc_sb, "Comma-separated bias spreads")->capture_default_str();
    rc->add_option("--ratios", rc_ratios, "Comma-separated g/g_c values")->capture_default_str();
    rc->add_option("--seeds", rc_seeds, "Seeds per grid cell")->capture_default_str();
    rc->add_flag("--heatmap", rc_heat, "Row-normalized accuracy heatmap output");
    rc->add_option("--train", rc_proto.train_len, "Training samples")->capture_default_str();
    rc->add_option("--test", rc_proto.test_len, "Test samples")->capture_default_str();
    rc->add_option("--washout-mg", rc_proto.mg_washout, "Mackey-Glass warmup samples")
        ->capture_default_str();
    rc->add_option("--washout-res", rc_proto.res_washout, "Reservoir warmup steps")
        ->capture_default_str();
    rc->add_option("--ridge", rc_proto.ridge_lambda, "Ridge regularization")->capture_default_str();
    rc->add_option("--input-scale", rc_proto.input_scale, "Input amplitude")->capture_default_str();

    // --- mackey-glass ---
    auto* mgc = app.add_subcommand("mackey-glass", "Emit the chaotic benchmark series");
    CommonOpts mg_opt;
    mg_opt.attach(mgc);
    MackeyGlassConfig mg;
    mg.length = 10000;
    mg.washout = 1000;
    mgc->add_option("--length", mg.length, "Samples emitted (post-washout)")->capture_default_str();
    mgc->add_option("--washout", mg.washout, "Warmup samples discarded")->capture_default_str();
    mgc->add_option("--beta", mg.beta, "Feedback strength")->capture_default_str();
    mgc->add_option("--gamma", mg.gamma, "Decay rate")->capture_default_str();
    mgc->add_option("--n-exp", mg.n_exp, "Nonlinearity exponent")->capture_default_str();
    mgc->add_option("--tau", mg.tau, "Feedback delay")->capture_default_str();
    mgc->add_option("--u0", mg.history_init, "Constant initial history")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (gc->parsed()) return cmd_gc(gc_opt, gc_mode, gc_json, gc_verbose);
        if (qinf->parsed())
            return cmd_qinf(qinf_opt, parse_list(qinf_g), qinf_steps, qinf_replicas, qinf_tail);
        if (lyap->parsed())
            return cmd_lyapunov(lyap_opt, parse_list(lyap_g), lyap_bisect,
                                {lyap_bracket.at(0), lyap_bracket.at(1)}, lyap_tol, lyap_replicas,
                                lyap_bp, lyap_cross_mode);
        if (phase->parsed()) {
            std::optional<std::pair<double, double>> br;
            if (phase_bracket.size() == 2) br = {phase_bracket[0], phase_bracket[1]};
            return cmd_phase(phase_opt, parse_list(phase_sb), phase_mode, br, phase_tol,
                             phase_replicas, phase_bp);
        }
        if (spec->parsed()) return cmd_spectrum(spec_opt, parse_list(spec_g), spec_replicas, spec_dump);
        if (rc->parsed())
            return cmd_reservoir(rc_opt, rc_proto, parse_list(rc_sb), parse_list(rc_ratios),
                                 rc_seeds, rc_heat);
        if (mgc->parsed()) return cmd_mackey_glass(mg_opt, mg);
        throw ConfigError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("eoc");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace eoc
