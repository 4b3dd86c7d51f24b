#include "kesten/commands.hpp"

#include <cmath>
#include <iostream>

#include "kesten/acceptance.hpp"
#include "kesten/audit.hpp"
#include "kesten/errors.hpp"
#include "kesten/exit.hpp"
#include "kesten/report.hpp"
#include "kesten/scaling.hpp"
#include "kesten/spectral.hpp"

namespace kesten {

namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.out_dir();
    fs::create_directories(dir);
    return dir;
}

std::string verdict_cell(bool flag, const char* yes, const char* no) { return flag ? yes : no; }

}  // namespace

int cmd_lyapunov(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const ModelSpec model = cfg.model();
    const long n_steps = cfg.get_long("n_steps", 64);
    const long replicas = cfg.get_long("replicas", 1024);
    std::vector<std::string> outputs;

    const LyapunovEstimate fwd = estimate_lyapunov(model, n_steps, replicas, cfg.seed(), cfg.threads());
    CsvWriter csv({"n_steps", "replicas", "gamma_hat", "std_err"});
    csv.add_row({format_long(fwd.n_steps), format_long(fwd.replicas), format_double(fwd.gamma_hat),
                 format_double(fwd.std_err)});
    csv.write(dir / "lyapunov.csv");
    outputs.push_back("lyapunov.csv");
    std::cout << "gamma_hat = " << format_double(fwd.gamma_hat) << " +- " << format_double(fwd.std_err) << " (n="
              << n_steps << ", replicas=" << replicas << ")\n";

    if (cfg.get_bool("inverse", false)) {
        const LyapunovEstimate inv = estimate_inverse_lyapunov(model, n_steps, replicas, cfg.seed(), cfg.threads());
        CsvWriter icsv({"n_steps", "replicas", "gamma_hat", "std_err"});
        icsv.add_row({format_long(inv.n_steps), format_long(inv.replicas), format_double(inv.gamma_hat),
                      format_double(inv.std_err)});
        icsv.write(dir / "lyapunov_inverse.csv");
        outputs.push_back("lyapunov_inverse.csv");
        std::cout << "inverse-product gamma_hat = " << format_double(inv.gamma_hat) << " +- "
                  << format_double(inv.std_err) << "\n";
    }
    write_manifest(dir, "lyapunov", cfg.doc(), cfg.seed(), cfg.threads(), outputs);
    return 0;
}

int cmd_alpha(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const ModelSpec model = cfg.model();
    // h estimation wants its own step count: in d = 1, n = 1 is exact and
    // anything larger only inflates the weight variance, while the shared
    // "n_steps" key is usually tuned for Lyapunov runs.
    const long n_steps =
        cfg.get_long("h_n_steps", model.dimension() == 1 ? 1 : cfg.get_long("n_steps", 64));
    const long replicas = cfg.get_long("replicas", 20000);
    const double s_max = cfg.get_double("s_max", 64.0);
    std::vector<double> s_grid = cfg.get_double_list("s_grid");
    if (s_grid.empty()) s_grid = {0.25, 0.5, 1.0, 1.5, 2.0};
    std::vector<std::string> outputs;

    const std::vector<double> log_norms = product_log_norms(model, n_steps, replicas, cfg.seed(), cfg.threads());
    CsvWriter hcsv({"s", "log_h_hat", "ci", "ess", "lower", "upper"});
    for (double s : s_grid) {
        const HEstimate h = h_from_log_norms(log_norms, s, n_steps);
        const HBounds b = h_bounds(model, s, replicas, cfg.seed(), cfg.threads());
        hcsv.add_row({format_double(s), format_double(h.log_h_hat), format_double(h.ci_halfwidth),
                      format_double(h.ess), format_double(b.lower), format_double(b.upper)});
    }
    hcsv.write(dir / "hfun.csv");
    outputs.push_back("hfun.csv");

    CsvWriter acsv({"status", "alpha_hat", "s_lo", "s_hi", "iterations", "ess_at_root", "convexity_ok",
                    "convexity_violation", "convexity_slack"});
    try {
        const TailIndexResult t = solve_tail_index(model, n_steps, replicas, cfg.seed(), s_max, cfg.threads());
        acsv.add_row({"root", format_double(t.alpha_hat), format_double(t.s_lo), format_double(t.s_hi),
                      format_long(t.iterations), format_double(t.ess_at_root),
                      verdict_cell(t.convexity.ok, "true", "false"), format_double(t.convexity.max_violation),
                      format_double(t.convexity.slack)});
        acsv.write(dir / "alpha.csv");
        outputs.push_back("alpha.csv");
        std::cout << "alpha_hat = " << format_double(t.alpha_hat) << " in [" << format_double(t.s_lo) << ", "
                  << format_double(t.s_hi) << "], convexity " << (t.convexity.ok ? "ok" : "violated") << "\n";

        std::vector<double> gammas = cfg.get_double_list("gamma_grid");
        if (gammas.empty()) gammas = {0.5 * t.alpha_hat, 1.5 * t.alpha_hat};
        std::vector<long> n_grid = cfg.get_long_list("n_grid");
        if (n_grid.empty()) n_grid = {1, 2, 3, 4};  // per-point ESS degrades fast in n for gamma > alpha
        CsvWriter dcsv({"gamma", "slope", "trend", "matches_dichotomy"});
        for (double g : gammas) {
            const MomentTrend mt = moment_dichotomy_probe(model, g, t.alpha_hat, n_grid,
                                                          std::max<long>(replicas / 10, 1000), cfg.seed(),
                                                          cfg.threads());
            dcsv.add_row({format_double(g), format_double(mt.slope),
                          mt.trend > 0 ? "positive" : (mt.trend < 0 ? "negative" : "flat"),
                          verdict_cell(mt.matches_dichotomy, "true", "false")});
        }
        dcsv.write(dir / "dichotomy.csv");
        outputs.push_back("dichotomy.csv");
    } catch (const NoRootError& e) {
        acsv.add_row({"no_root", "", "", "", "", "", "", "", ""});
        acsv.write(dir / "alpha.csv");
        outputs.push_back("alpha.csv");
        write_manifest(dir, "alpha", cfg.doc(), cfg.seed(), cfg.threads(), outputs);
        std::cout << "no root: " << e.what() << "\n";
        throw;  // exit code 3: the tail index is this command's deliverable
    }
    write_manifest(dir, "alpha", cfg.doc(), cfg.seed(), cfg.threads(), outputs);
    return 0;
}

int cmd_exit(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const ModelSpec model = cfg.model();
    const std::string regime = cfg.get_string("regime", "");
    if (regime != "contractive" && regime != "explosive")
        throw ConfigError("cmd_exit: 'regime' must be \"contractive\" or \"explosive\"");
    const std::vector<double> r_grid = cfg.get_double_list("R_grid");
    if (r_grid.empty()) throw ConfigError("cmd_exit: 'R_grid' is required");
    const long replicas = cfg.get_long("replicas", 10000);
    const long cap = cfg.resolve_cap(regime, r_grid.back());
    const Vec x0 = cfg.x0(model.dimension());
    std::vector<std::string> outputs;

    const std::vector<ExitBatchStats> stats = exit_sweep(model, x0, r_grid, replicas, cap, cfg.seed(), cfg.threads());

    CsvWriter ecsv({"R", "mean_tau", "ci", "censored_frac"});
    std::vector<std::pair<double, double>> usable;
    for (const auto& st : stats) {
        ecsv.add_row({format_double(st.r_ball), format_double(st.mean_tau), format_double(st.ci_halfwidth),
                      format_double(st.censored_frac)});
        if (!st.unreliable) usable.emplace_back(st.r_ball, st.mean_tau);
        else
            std::cout << "R = " << format_double(st.r_ball) << ": censored_frac "
                      << format_double(st.censored_frac) << " > 1e-3, excluded from the fit (lower bound only)\n";
    }
    ecsv.write(dir / "exit.csv");
    outputs.push_back("exit.csv");

    CsvWriter scsv({"mode", "slope", "r_squared"});
    if (usable.size() >= 3) {
        const ScalingFit fit = regime == "contractive" ? fit_contractive(usable) : fit_explosive(usable);
        scsv.add_row({regime == "contractive" ? "loglog" : "semilog", format_double(fit.slope),
                      format_double(fit.r_squared)});
        std::cout << regime << " fit: slope = " << format_double(fit.slope)
                  << ", r^2 = " << format_double(fit.r_squared) << "\n";
    } else {
        std::cout << "fewer than 3 reliable points; scaling fit skipped\n";
    }
    scsv.write(dir / "scaling.csv");
    outputs.push_back("scaling.csv");

    if (regime == "contractive") {
        const long n_samples = cfg.get_long("hill_samples", 100000);
        const long k = cfg.get_long("hill_k", 1000);
        const long burn_in = cfg.get_long("hill_burn_in", 1000);
        const long thin = cfg.get_long("hill_thin", 10);
        const HillEstimate hill =
            hill_tail_index(long_run_norm_samples(model, n_samples, burn_in, thin, cfg.seed()), k);
        CsvWriter hcsv({"alpha_hill", "k", "n_samples"});
        hcsv.add_row({format_double(hill.alpha_hill), format_long(hill.k), format_long(hill.n_samples)});
        hcsv.write(dir / "hill.csv");
        outputs.push_back("hill.csv");
        std::cout << "hill alpha = " << format_double(hill.alpha_hill) << " (k=" << k << ")\n";
    } else {
        const LyapunovEstimate g =
            estimate_lyapunov(model, cfg.get_long("n_steps", 128), cfg.get_long("gamma_replicas", 512), cfg.seed(),
                              cfg.threads());
        CsvWriter ccsv({"slope", "gamma_hat", "inv_gamma_hat", "slope_times_gamma"});
        const double slope = usable.size() >= 3 ? fit_explosive(usable).slope : 0.0;
        ccsv.add_row({format_double(slope), format_double(g.gamma_hat),
                      format_double(g.gamma_hat != 0.0 ? 1.0 / g.gamma_hat : 0.0),
                      format_double(slope * g.gamma_hat)});
        ccsv.write(dir / "comparison.csv");
        outputs.push_back("comparison.csv");
        std::cout << "slope vs 1/gamma_hat: " << format_double(slope) << " vs "
                  << format_double(g.gamma_hat != 0.0 ? 1.0 / g.gamma_hat : 0.0) << "\n";
    }

    ChartSeries series;
    series.label = "mean exit time";
    for (const auto& st : stats) series.points.emplace_back(st.r_ball, std::max(st.mean_tau, 1e-12));
    write_svg_line_chart(dir / "exit.svg", "Mean exit time vs R", "R", "E[tau_R]", {series},
                         /*log_x=*/true, /*log_y=*/regime == "contractive");
    outputs.push_back("exit.svg");

    write_manifest(dir, "exit", cfg.doc(), cfg.seed(), cfg.threads(), outputs);
    return 0;
}

int cmd_audit(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const ModelSpec model = cfg.model();
    const std::string regime_str = cfg.get_string("regime", "");
    if (regime_str != "contractive" && regime_str != "explosive")
        throw ConfigError("cmd_audit: 'regime' must be \"contractive\" or \"explosive\"");
    const Regime regime = regime_str == "contractive" ? Regime::Contractive : Regime::Explosive;
    const long budget = cfg.get_long("budget", 100000);

    const AuditReport report = audit(model, regime, budget, cfg.seed(), cfg.threads());
    CsvWriter csv({"check", "verdict", "statistic", "detail"});
    for (const auto& e : report.entries) {
        csv.add_row({e.name, to_string(e.verdict), format_double(e.statistic), e.detail});
        std::cout << e.name << ": " << to_string(e.verdict) << " (" << e.detail << ")\n";
    }
    csv.write(dir / "audit.csv");
    write_manifest(dir, "audit", cfg.doc(), cfg.seed(), cfg.threads(), {"audit.csv"});
    std::cout << (report.no_fail() ? "audit: no failures" : "audit: FAILURES present") << "\n";
    return 0;
}

int cmd_sweep_lr(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const ModelSpec base = cfg.model();
    const auto* sgd = base.get_if<SgdQuadraticModel>();
    if (sgd == nullptr) throw ConfigError("cmd_sweep_lr: model must be sgd_quadratic");
    std::vector<double> etas = cfg.get_double_list("eta_grid");
    if (etas.empty()) etas = {0.0, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    const long n_steps = cfg.get_long("n_steps", 64);
    const long replicas = cfg.get_long("replicas", 256);

    CsvWriter csv({"eta", "gamma_hat", "std_err"});
    ChartSeries series;
    series.label = "gamma_hat(eta)";
    std::vector<std::pair<double, double>> curve;
    for (double eta : etas) {
        const ModelSpec m = ModelSpec::sgd_quadratic(eta, sgd->batch, sgd->sigma, sgd->sigma_b);
        const LyapunovEstimate g = estimate_lyapunov(m, n_steps, replicas, cfg.seed(), cfg.threads());
        csv.add_row({format_double(eta), format_double(g.gamma_hat), format_double(g.std_err)});
        curve.emplace_back(eta, g.gamma_hat);
        series.points.emplace_back(eta, g.gamma_hat);
    }
    csv.write(dir / "sweep.csv");

    CsvWriter ccsv({"eta_lo", "eta_hi"});
    for (std::size_t i = 0; i + 1 < curve.size(); ++i)
        if (curve[i].second <= 0.0 && curve[i + 1].second > 0.0)
            ccsv.add_row({format_double(curve[i].first), format_double(curve[i + 1].first)});
    ccsv.write(dir / "crossing.csv");

    write_svg_line_chart(dir / "sweep.svg", "Lyapunov exponent vs learning rate", "eta", "gamma_hat", {series},
                         /*log_x=*/false, /*log_y=*/false);
    write_manifest(dir, "sweep-lr", cfg.doc(), cfg.seed(), cfg.threads(), {"sweep.csv", "crossing.csv", "sweep.svg"});
    std::cout << "sweep over " << etas.size() << " learning rates written\n";
    return 0;
}

int cmd_reproduce(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const AcceptanceOutcome outcome = run_acceptance(dir, cfg.threads(), std::cout);
    write_manifest(dir, "reproduce", cfg.doc(), cfg.seed(), cfg.threads(), {"acceptance.csv"});
    return outcome.all_pass() ? 0 : 4;
}

}  // namespace kesten
