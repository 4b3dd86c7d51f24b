#include "kesten/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kesten/errors.hpp"
#include "kesten/parallel.hpp"

namespace kesten {

namespace {

constexpr std::uint64_t kSaltForward = 0x4C79'6150'756E'6F76ull;
constexpr std::uint64_t kSaltInverse = 0x496E'7650'726F'6421ull;
constexpr std::uint64_t kSaltBounds = 0x4842'6F75'6E64'7321ull;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_err_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

// One renormalized-product trajectory; `record` is called with the running
// log norm after every step.
template <class Step, class Record>
void run_product(const ModelSpec& model, long n_steps, RngStream rng, Step step_matrix, Record record) {
    const std::size_t d = model.dimension();
    Matrix prod = Matrix::identity(d);
    Matrix tmp(d);
    AffineMapSample draw;
    double acc = 0.0;
    for (long k = 1; k <= n_steps; ++k) {
        model.sample_into(rng, draw);
        step_matrix(tmp, draw.a, prod);
        const double nm = operator_norm(tmp);
        if (nm == 0.0 || !std::isfinite(nm))
            throw NumericalError("renormalized product: step norm is zero or non-finite");
        const double inv = 1.0 / nm;
        tmp *= inv;
        std::swap(prod, tmp);
        acc += std::log(nm);
        record(k, acc);
    }
}

void forward_step(Matrix& out, const Matrix& a, const Matrix& prod) { mat_mat_into(out, a, prod); }

void inverse_step(Matrix& out, const Matrix& a, const Matrix& prod) {
    // Pi_n^-1 = A_1^-1 ... A_n^-1: append each new inverse on the right.
    mat_mat_into(out, prod, invert(a));
}

std::vector<double> collect_log_norms(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                      int threads, std::uint64_t salt, bool inverse) {
    if (n_steps < 1) throw ConfigError("product estimate: n_steps must be >= 1");
    if (replicas < 1) throw ConfigError("product estimate: replicas must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(replicas));
    RngStream base(seed, 0);
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        double last = 0.0;
        auto rec = [&](long, double acc) { last = acc; };
        if (inverse)
            run_product(model, n_steps, base.substream(salt, r), inverse_step, rec);
        else
            run_product(model, n_steps, base.substream(salt, r), forward_step, rec);
        out[r] = last;
    });
    return out;
}

LyapunovEstimate reduce_lyapunov(const std::vector<double>& log_norms, long n_steps) {
    std::vector<double> per(log_norms.size());
    for (std::size_t i = 0; i < per.size(); ++i) per[i] = log_norms[i] / static_cast<double>(n_steps);
    LyapunovEstimate e;
    e.gamma_hat = mean_of(per);
    e.std_err = std_err_of(per, e.gamma_hat);
    e.n_steps = n_steps;
    e.replicas = static_cast<long>(per.size());
    return e;
}

}  // namespace

std::vector<double> product_log_norms(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                      int threads) {
    return collect_log_norms(model, n_steps, replicas, seed, threads, kSaltForward, false);
}

std::vector<std::vector<double>> product_log_norms_grid(const ModelSpec& model, const std::vector<long>& n_grid,
                                                        long replicas, std::uint64_t seed, int threads) {
    if (n_grid.empty()) throw ConfigError("product grid: empty n grid");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1]) throw ConfigError("product grid: n grid must be strictly increasing");
    if (n_grid.front() < 1) throw ConfigError("product grid: n must be >= 1");

    std::vector<std::vector<double>> out(static_cast<std::size_t>(replicas),
                                         std::vector<double>(n_grid.size(), 0.0));
    RngStream base(seed, 0);
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        std::size_t next = 0;
        auto rec = [&](long k, double acc) {
            while (next < n_grid.size() && n_grid[next] == k) out[r][next++] = acc;
        };
        run_product(model, n_grid.back(), base.substream(kSaltForward, r), forward_step, rec);
    });
    return out;
}

// replicas = 1 is allowed (std_err is then 0): single-replica reruns must
// reproduce gamma_hat bit-exactly.
LyapunovEstimate estimate_lyapunov(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                   int threads) {
    return reduce_lyapunov(product_log_norms(model, n_steps, replicas, seed, threads), n_steps);
}

LyapunovEstimate estimate_inverse_lyapunov(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed,
                                           int threads) {
    return reduce_lyapunov(collect_log_norms(model, n_steps, replicas, seed, threads, kSaltInverse, true), n_steps);
}

HEstimate h_from_log_norms(const std::vector<double>& log_norms, double s, long n_steps) {
    if (!(s >= 0.0)) throw ConfigError("estimate_h: s must be >= 0");
    const std::size_t n = log_norms.size();
    double top = -std::numeric_limits<double>::infinity();
    for (double l : log_norms) top = std::max(top, s * l);

    double sum = 0.0, sumsq = 0.0;
    for (double l : log_norms) {
        const double w = std::exp(s * l - top);
        sum += w;
        sumsq += w * w;
    }
    const double mean_w = sum / static_cast<double>(n);

    HEstimate h;
    h.s = s;
    h.n_steps = n_steps;
    h.replicas = static_cast<long>(n);
    h.log_h_hat = (top + std::log(mean_w)) / static_cast<double>(n_steps);
    h.ess = sum * sum / sumsq;
    if (n > 1) {
        double var_w = 0.0;
        for (double l : log_norms) {
            const double w = std::exp(s * l - top);
            var_w += (w - mean_w) * (w - mean_w);
        }
        var_w /= static_cast<double>(n - 1);
        const double se_log = std::sqrt(var_w / static_cast<double>(n)) / mean_w;
        h.ci_halfwidth = 1.96 * se_log / static_cast<double>(n_steps);
    }
    return h;
}

HEstimate estimate_h(const ModelSpec& model, double s, long n_steps, long replicas, std::uint64_t seed, int threads) {
    if (replicas < 2) throw ConfigError("estimate_h: replicas must be >= 2");
    return h_from_log_norms(product_log_norms(model, n_steps, replicas, seed, threads), s, n_steps);
}

HBounds h_bounds(const ModelSpec& model, double s, long replicas, std::uint64_t seed, int threads) {
    if (!(s >= 0.0)) throw ConfigError("h_bounds: s must be >= 0");
    if (replicas < 2) throw ConfigError("h_bounds: replicas must be >= 2");

    std::vector<double> lo(static_cast<std::size_t>(replicas));
    std::vector<double> hi(static_cast<std::size_t>(replicas));
    std::vector<char> singular(static_cast<std::size_t>(replicas), 0);
    RngStream base(seed, 0);
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        RngStream rng = base.substream(kSaltBounds, r);
        const AffineMapSample draw = model.sample(rng);
        hi[r] = std::pow(operator_norm(draw.a), s);
        try {
            lo[r] = std::pow(operator_norm(invert(draw.a)), -s);
        } catch (const SingularMatrixError&) {
            lo[r] = 0.0;
            singular[r] = 1;
        }
    });

    HBounds b;
    b.upper = mean_of(hi);
    b.upper_se = std_err_of(hi, b.upper);
    b.lower = mean_of(lo);
    b.lower_se = std_err_of(lo, b.lower);
    long sing = 0;
    for (char c : singular) sing += c;
    b.singular_frac = static_cast<double>(sing) / static_cast<double>(replicas);
    return b;
}

TailIndexResult solve_tail_index(const ModelSpec& model, long n_steps, long replicas, std::uint64_t seed, double s_max,
                                 int threads) {
    if (replicas < 2) throw ConfigError("solve_tail_index: replicas must be >= 2");
    const std::vector<double> log_norms = product_log_norms(model, n_steps, replicas, seed, threads);
    auto eval = [&](double s) { return h_from_log_norms(log_norms, s, n_steps); };

    auto usable = [&](const HEstimate& h, double s) {
        if (!h.reliable())
            throw NoRootError("solve_tail_index: ESS fell below " + std::to_string(static_cast<int>(kEssFloor)) +
                              " at s = " + std::to_string(s) + " before a sign change");
        return h;
    };

    double s_lo = 0.0, s_hi = 0.0;
    const HEstimate at_one = usable(eval(1.0), 1.0);
    if (at_one.log_h_hat < 0.0) {
        s_lo = 1.0;
        double s = 2.0;
        bool bracketed = false;
        while (s <= s_max) {
            const HEstimate h = eval(s);
            if (!h.reliable()) {
                // Hit the ESS wall. The root may still sit between the last
                // reliable point and the wall; search inward before giving up.
                double wall = s;
                while (wall - s_lo > 1e-3) {
                    const double mid = 0.5 * (s_lo + wall);
                    const HEstimate hm = eval(mid);
                    if (!hm.reliable()) {
                        wall = mid;
                    } else if (hm.log_h_hat > 0.0) {
                        s_hi = mid;
                        bracketed = true;
                        break;
                    } else {
                        s_lo = mid;
                    }
                }
                if (!bracketed)
                    throw NoRootError(
                        "solve_tail_index: ESS fell below " + std::to_string(static_cast<int>(kEssFloor)) +
                        " near s = " + std::to_string(wall) + " before a sign change (alpha out of reach at this "
                        "replica budget, or alpha >= alpha_infty)");
                break;
            }
            if (h.log_h_hat > 0.0) {
                s_hi = s;
                bracketed = true;
                break;
            }
            s_lo = s;
            s *= 2.0;
        }
        if (!bracketed)
            throw NoRootError("solve_tail_index: log h-hat stays negative up to s_max (h decreasing, or alpha >= "
                              "alpha_infty)");
    } else {
        // h-hat already >= 1 at s = 1: walk down; must turn negative near 0
        // when the model is contractive.
        s_hi = 1.0;
        double s = 0.5;
        bool bracketed = false;
        while (s >= 1.0 / 1024.0) {
            const HEstimate h = eval(s);
            if (h.log_h_hat < 0.0) {
                s_lo = s;
                bracketed = true;
                break;
            }
            s_hi = s;
            s /= 2.0;
        }
        if (!bracketed)
            throw NoRootError("solve_tail_index: log h-hat positive down to s = 2^-10; h is not decreasing at 0");
    }

    int iterations = 0;
    while (s_hi - s_lo > 1e-3) {
        const double mid = 0.5 * (s_lo + s_hi);
        const HEstimate h = eval(mid);
        if (h.log_h_hat < 0.0)
            s_lo = mid;
        else
            s_hi = mid;
        ++iterations;
    }

    TailIndexResult res;
    res.alpha_hat = 0.5 * (s_lo + s_hi);
    res.s_lo = s_lo;
    res.s_hi = s_hi;
    res.iterations = iterations;
    res.ess_at_root = eval(res.alpha_hat).ess;

    // Convexity of log h-hat on a 9-point grid spanning the root.
    const double top = 1.5 * res.alpha_hat;
    double pooled = 0.0;
    for (int i = 0; i < 9; ++i) {
        const double s = top * static_cast<double>(i) / 8.0;
        const HEstimate h = eval(s);
        res.convexity.grid_s.push_back(s);
        res.convexity.grid_log_h.push_back(h.log_h_hat);
        pooled += h.ci_halfwidth * h.ci_halfwidth;
    }
    const double pooled_se = std::sqrt(pooled / 9.0) / 1.96;
    res.convexity.slack = 2.0 * pooled_se;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < res.convexity.grid_log_h.size(); ++i) {
        const double d2 = res.convexity.grid_log_h[i + 1] - 2.0 * res.convexity.grid_log_h[i] +
                          res.convexity.grid_log_h[i - 1];
        worst = std::min(worst, d2);
    }
    res.convexity.max_violation = std::max(0.0, -worst);
    res.convexity.ok = res.convexity.max_violation <= res.convexity.slack;
    return res;
}

MomentTrend moment_dichotomy_probe(const ModelSpec& model, double gamma, double alpha_hat,
                                   const std::vector<long>& n_grid, long replicas, std::uint64_t seed, int threads) {
    if (!(gamma >= 0.0)) throw ConfigError("moment_dichotomy_probe: gamma must be >= 0");
    const auto grid = product_log_norms_grid(model, n_grid, replicas, seed, threads);

    MomentTrend t;
    t.gamma = gamma;
    t.alpha_hat = alpha_hat;

    std::vector<double> scratch(grid.size());
    for (std::size_t j = 0; j < n_grid.size(); ++j) {
        for (std::size_t r = 0; r < grid.size(); ++r) scratch[r] = grid[r][j];
        const HEstimate h = h_from_log_norms(scratch, gamma, 1);  // log E ||Pi_n||^gamma, unscaled
        t.points.push_back({n_grid[j], h.log_h_hat, h.ess});
    }

    // OLS of log moment on n; residual-based slope error for the verdict.
    const std::size_t k = t.points.size();
    double mx = 0.0, my = 0.0;
    for (const auto& p : t.points) {
        mx += static_cast<double>(p.n);
        my += p.log_moment;
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : t.points) {
        const double dx = static_cast<double>(p.n) - mx;
        sxx += dx * dx;
        sxy += dx * (p.log_moment - my);
    }
    t.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double ssr = 0.0;
    for (const auto& p : t.points) {
        const double fit = my + t.slope * (static_cast<double>(p.n) - mx);
        ssr += (p.log_moment - fit) * (p.log_moment - fit);
    }
    const double slope_se = (k > 2 && sxx > 0.0) ? std::sqrt(ssr / static_cast<double>(k - 2) / sxx) : 0.0;
    if (t.slope > 2.0 * slope_se && t.slope > 0.0)
        t.trend = 1;
    else if (t.slope < -2.0 * slope_se && t.slope < 0.0)
        t.trend = -1;
    else
        t.trend = 0;
    t.matches_dichotomy = (gamma < alpha_hat && t.trend < 0) || (gamma > alpha_hat && t.trend > 0);
    return t;
}

}  // namespace kesten
