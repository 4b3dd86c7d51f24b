#ifndef KESTEN_EXIT_HPP
#define KESTEN_EXIT_HPP

#include <cstdint>
#include <vector>

#include "kesten/models.hpp"

namespace kesten {

// Any |component| beyond this terminates the trajectory as an exit: the norm
// then exceeds every admissible R (<= 1e149) and doubles stay finite through
// one more step.
inline constexpr double kOverflowThreshold = 1e150;

struct ExitRecord {
    bool exited = false;
    long tau = 0;        // valid when exited; tau = 0 iff |x0| > R already
    Vec exit_point;      // first point with |x| > R (strict)
    long cap = 0;        // censoring cap when !exited
    bool overflowed = false;
};

struct ExitBatchStats {
    double r_ball = 0.0;
    long replicas = 0;
    double censored_frac = 0.0;
    // Censored replicas contribute their cap, making this a certified lower
    // bound; `unreliable` is set when censored_frac > 1e-3.
    double mean_tau = 0.0;
    double ci_halfwidth = 0.0;
    double mean_log_exit_norm = 0.0;
    bool unreliable = false;
};

struct SandwichReport {
    long lower_violations = 0;  // tau_R <= tau_hat_R failures
    long upper_violations = 0;  // tau_hat_R <= tau_{sqrt(p) R} + p failures
    long paths_checked = 0;
    long censored = 0;          // excluded paths (cap hit before all three times resolved)
};

ExitRecord simulate_exit(const ModelSpec& model, const Vec& x0, double r_ball, long cap, RngStream& rng);

ExitBatchStats estimate_mean_exit(const ModelSpec& model, const Vec& x0, double r_ball, long replicas, long cap,
                                  std::uint64_t seed, int threads = 1);

struct SweepRaw {
    std::vector<double> r_grid;
    // [grid index][replica]; censored replicas hold the cap with exited = 0.
    std::vector<std::vector<long>> taus;
    std::vector<std::vector<char>> exited;
    std::vector<std::vector<double>> log_exit_norms;
    long cap = 0;
};

// One trajectory per replica records its first crossing of every R in the
// grid (common random numbers), so tau is pathwise monotone across R.
SweepRaw exit_sweep_raw(const ModelSpec& model, const Vec& x0, const std::vector<double>& r_grid, long replicas,
                        long cap, std::uint64_t seed, int threads = 1);

std::vector<ExitBatchStats> exit_sweep(const ModelSpec& model, const Vec& x0, const std::vector<double>& r_grid,
                                       long replicas, long cap, std::uint64_t seed, int threads = 1);

std::vector<ExitBatchStats> reduce_sweep(const SweepRaw& raw);

// Max over steps k <= n of the relative deviation between X_k(y) - X_k(z)
// and Pi_k (y - z) on shared draws; the two sides are tracked independently
// (trajectories vs renormalized product).
double coupled_difference_check(const ModelSpec& model, const Vec& y, const Vec& z, long n, std::uint64_t seed);

// Per-path check of tau_R <= tau_hat_R <= tau_{sqrt(p) R} + p for ARCH(p),
// where tau_hat is the exit time of the scalar squared series.
SandwichReport arch_sandwich_check(const ModelSpec& model, const Vec& x0, double r_ball, long replicas, long cap,
                                   std::uint64_t seed, int threads = 1);

// |X_n| sampled every `thin` steps after `burn_in`, from a single long
// trajectory started at 0; feeds the Hill estimator.
std::vector<double> long_run_norm_samples(const ModelSpec& model, long count, long burn_in, long thin,
                                          std::uint64_t seed);

}  // namespace kesten

#endif  // KESTEN_EXIT_HPP
