#ifndef KESTEN_AUDIT_HPP
#define KESTEN_AUDIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kesten/models.hpp"

namespace kesten {

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

enum class Regime { Contractive, Explosive };

struct AuditEntry {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    double statistic = 0.0;
    std::string detail;  // sample sizes and thresholds, always spelled out
};

struct AuditReport {
    std::vector<AuditEntry> entries;

    bool all_pass() const;
    bool no_fail() const;
    const AuditEntry* find(const std::string& name) const;
};

// Candidate points for the fixed-point check: origin, axis and diagonal
// points, random draws, the ARCH near-fixed-point -kappa*(1,...,1), and the
// solved fixed point when the map is deterministic.
std::vector<Vec> default_fixed_point_candidates(const ModelSpec& model, std::uint64_t seed);

// P(Ax + B = x) < 1 for every candidate: a single draw with
// |Ax+B-x| >= 1e-10 (1+|x|) witnesses it.
AuditEntry check_fixed_point(const ModelSpec& model, const std::vector<Vec>& candidates, long replicas,
                             std::uint64_t seed);

struct TailRatioParams {
    std::vector<double> r_grid = {10.0, 100.0};
    std::vector<double> z_grid = {2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
    int random_x_per_r = 3;
    long replicas = 100000;
};

// Worst-case decay exponent of P(|Ax+B| > zR) / P(|Ax+B| > R) in z over
// sampled x in B_R. Pass when the exponent exceeds alpha_hat (that value is
// the empirical alpha_plus); Inconclusive when no cell resolves or no
// alpha_hat is available for comparison.
AuditEntry check_tail_ratio(const ModelSpec& model, const TailRatioParams& params,
                            std::optional<double> alpha_hat, std::uint64_t seed);

// Explosive-regime variant: decay measured against (log z)^beta0; Pass when
// the fitted beta0 exceeds 1.
AuditEntry check_log_tail_ratio(const ModelSpec& model, const TailRatioParams& params, std::uint64_t seed);

// P[x . Pi_{n0} y = 0] < 1 over canonical and random direction pairs, for
// n0 = 1..n0_max; near-zero means |x . Pi y| <= 1e-12 ||Pi||.
AuditEntry check_nondegeneracy(const ModelSpec& model, int n0_max, int random_pairs, long replicas,
                               std::uint64_t seed);

std::vector<Vec> default_drift_grid(const ModelSpec& model, std::uint64_t seed);

// inf_x E log |Ax + B - x| > -infinity, with log clipped at -700 and the
// clip frequency reported.
AuditEntry check_drift_lower_bound(const ModelSpec& model, const std::vector<Vec>& x_grid, long replicas,
                                   std::uint64_t seed);

// P(||A^-1|| < 1) > 0 (sufficient for the tail-index root to exist) plus the
// largest s on the grid with a stable E||A||^s (ESS rule).
AuditEntry check_contraction_criterion(const ModelSpec& model, const std::vector<double>& s_grid, long replicas,
                                       std::uint64_t seed);

// P(A singular) = 0, by sampling: any singular draw is a definitive Fail.
AuditEntry check_invertibility(const ModelSpec& model, long replicas, std::uint64_t seed);

// No invariant proper subspace: the span of sampled product orbits must
// reach full dimension. Confidence-only (Pass or Inconclusive).
AuditEntry check_irreducibility(const ModelSpec& model, int chains, int chain_length, std::uint64_t seed);

// Unbounded support of the long-run law, heuristically: the running max of
// |X_n| must grow across nested run lengths. Pass or Inconclusive only.
AuditEntry check_unbounded_support(const ModelSpec& model, const std::vector<long>& run_lengths,
                                   std::uint64_t seed);

// Full per-regime audit; `budget` scales the per-check sample sizes.
AuditReport audit(const ModelSpec& model, Regime regime, long budget, std::uint64_t seed, int threads = 1);

}  // namespace kesten

#endif  // KESTEN_AUDIT_HPP
