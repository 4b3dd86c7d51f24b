#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kesten/commands.hpp"
#include "kesten/errors.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string seed_str;
    int threads = -1;
};

void add_common(CLI::App* sub, CommonOpts& opts, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path, "JSON run configuration");
    if (config_required) c->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sub->add_option("--seed", opts.seed_str, "64-bit seed (overrides config)");
    sub->add_option("--threads", opts.threads,
                    "worker threads, 0 = auto (overrides config; KESTEN_THREADS overrides this flag)");
}

kesten::RunConfig load(const CommonOpts& opts) {
    kesten::RunConfig cfg = opts.config_path.empty() ? kesten::RunConfig::from_json(nlohmann::json::object())
                                                     : kesten::RunConfig::from_file(opts.config_path);
    if (!opts.out_dir.empty()) cfg.override_out_dir(opts.out_dir);
    if (!opts.seed_str.empty()) {
        try {
            cfg.override_seed(std::stoull(opts.seed_str));
        } catch (const std::exception&) {
            throw kesten::ConfigError("--seed must be an unsigned 64-bit integer");
        }
    }
    if (opts.threads >= 0) cfg.override_threads(opts.threads);
    // the environment takes precedence over the flag
    if (const char* env = std::getenv("KESTEN_THREADS")) {
        try {
            cfg.override_threads(std::stoi(env));
        } catch (const std::exception&) {
            throw kesten::ConfigError("KESTEN_THREADS must be an integer");
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kesten - exit-time simulation for random affine recursions"};
    app.require_subcommand(1);

    CommonOpts lyap, alpha, exit_opts, audit_opts, sweep, repro;
    auto* sub_lyap = app.add_subcommand("lyapunov", "estimate the Lyapunov exponent");
    add_common(sub_lyap, lyap, true);
    auto* sub_alpha = app.add_subcommand("alpha", "estimate h_A and solve the tail index");
    add_common(sub_alpha, alpha, true);
    auto* sub_exit = app.add_subcommand("exit", "exit-time sweep and scaling fit");
    add_common(sub_exit, exit_opts, true);
    auto* sub_audit = app.add_subcommand("audit", "empirical assumption audit");
    add_common(sub_audit, audit_opts, true);
    auto* sub_sweep = app.add_subcommand("sweep-lr", "Lyapunov exponent vs learning rate");
    add_common(sub_sweep, sweep, true);
    auto* sub_repro = app.add_subcommand("reproduce", "run the full acceptance suite with pinned seeds");
    add_common(sub_repro, repro, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_lyap->parsed()) return kesten::cmd_lyapunov(load(lyap));
        if (sub_alpha->parsed()) return kesten::cmd_alpha(load(alpha));
        if (sub_exit->parsed()) return kesten::cmd_exit(load(exit_opts));
        if (sub_audit->parsed()) return kesten::cmd_audit(load(audit_opts));
        if (sub_sweep->parsed()) return kesten::cmd_sweep_lr(load(sweep));
        if (sub_repro->parsed()) return kesten::cmd_reproduce(load(repro));
    } catch (const kesten::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kesten::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
