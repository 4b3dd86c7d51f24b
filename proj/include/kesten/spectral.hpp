#ifndef KESTEN_SPECTRAL_HPP
#define KESTEN_SPECTRAL_HPP

#include <cstdint>
#include <vector>

#include "kesten/models.hpp"

namespace kesten {

// Weighted Monte Carlo estimates below this effective sample size are
// flagged unreliable (heavy weights, s near or above alpha_infty).
inline constexpr double kEssFloor = 100.0;

struct LyapunovEstimate {
    double gamma_hat = 0.0;
    double std_err = 0.0;
    long n_steps = 0;
    long replicas = 0;
};

struct HEstimate {
    double s = 0.0;
    double log_h_hat = 0.0;   // estimate of log h_A(s)
    double ci_halfwidth = 0.0;  // 95% normal halfwidth in the log domain
    double ess = 0.0;
    long n_steps = 0;
    long replicas = 0;

    bool reliable() const { return ess >= kEssFloor; }
};

struct HBounds {
    double lower = 0.0;   // E ||A^-1||^-s  (0 when singular draws occur)
    double lower_se = 0.0;
    double upper = 0.0;   // E ||A||^s
    double upper_se = 0.0;
    double singular_frac = 0.0;
};

struct ConvexityDiag {
    bool ok = true;
    double max_violation = 0.0;  // worst negative second difference, as a magnitude
    double slack = 0.0;          // 2 x pooled standard error
    std::vector<double> grid_s;
    std::vector<double> grid_log_h;
};

struct TailIndexResult {
    double alpha_hat = 0.0;
    double s_lo = 0.0;
    double s_hi = 0.0;
    int iterations = 0;
    double ess_at_root = 0.0;
    ConvexityDiag convexity;
};

struct MomentTrendPoint {
    long n = 0;
    double log_moment = 0.0;  // log estimate of E ||Pi_n||^gamma
    double ess = 0.0;
};

struct MomentTrend {
    double gamma = 0.0;
    double alpha_hat = 0.0;
    std::vector<MomentTrendPoint> points;
    double slope = 0.0;      // OLS slope of log moment vs n
    int trend = 0;           // -1 shrinking, 0 flat, +1 growing
    bool matches_dichotomy = false;
};

// Per-replica accumulated log ||Pi_n|| from the renormalized product
// (divide by the operator norm each step, sum the logs). The product norm
// itself is never materialized, so nothing overflows.
std::vector<double> product_log_norms(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                      int threads = 1);

// Same trajectories, recording the accumulator at each n in `n_grid`
// (ascending). Result is [replica][grid index].
std::vector<std::vector<double>> product_log_norms_grid(const ModelSpec& model, const std::vector<long>& n_grid,
                                                        long replicas, std::uint64_t seed, int threads = 1);

LyapunovEstimate estimate_lyapunov(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                   int threads = 1);

// Renormalized products of the sampled inverses; the growth rate converges
// to -gamma_L for irreducible invertible models. Throws SingularMatrixError
// if a singular sample is encountered.
LyapunovEstimate estimate_inverse_lyapunov(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                           int threads = 1);

// log-mean-exp of s * L_r over replicas, divided by n_steps.
HEstimate h_from_log_norms(const std::vector<double>& log_norms, double s, long n_steps);

HEstimate estimate_h(const ModelSpec& model, double s, long n_steps, long replicas, std::uint64_t seed,
                     int threads = 1);

// Single-step Monte Carlo of E ||A^-1||^-s <= h_A(s) <= E ||A||^s.
HBounds h_bounds(const ModelSpec& model, double s, long replicas, std::uint64_t seed, int threads = 1);

// Root of log h-hat(s) = 0: doubling bracket from s = 1, then bisection to
// width 1e-3. One frozen set of L_r is reused for every s, so the evaluated
// curve is deterministic and exactly convex in s. Throws NoRootError when no
// sign change exists below s_max or the ESS floor is hit first.
TailIndexResult solve_tail_index(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                 double s_max = 64.0, int threads = 1);

MomentTrend moment_dichotomy_probe(const ModelSpec& model, double gamma, double alpha_hat,
                                   const std::vector<long>& n_grid, long replicas, std::uint64_t seed,
                                   int threads = 1);

}  // namespace kesten

#endif  // KESTEN_SPECTRAL_HPP
