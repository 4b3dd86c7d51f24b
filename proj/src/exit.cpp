#include "kesten/exit.hpp"

#include <algorithm>
#include <cmath>

#include "kesten/errors.hpp"
#include "kesten/parallel.hpp"

namespace kesten {

namespace {

constexpr std::uint64_t kSaltExit = 0x4578'6974'5469'6D65ull;
constexpr std::uint64_t kSaltCouple = 0x436F'7570'6C65'6421ull;
constexpr std::uint64_t kSaltSandwich = 0x5361'6E64'7769'6368ull;

double max_abs(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

void validate_radius(double r_ball) {
    if (!(r_ball > 0.0) || r_ball > 1e149) throw ConfigError("exit: R must lie in (0, 1e149]");
}

ExitBatchStats reduce_batch(double r_ball, const std::vector<long>& taus, const std::vector<char>& exited,
                            const std::vector<double>& log_exit_norms) {
    const std::size_t n = taus.size();
    ExitBatchStats st;
    st.r_ball = r_ball;
    st.replicas = static_cast<long>(n);

    double mean = 0.0;
    long censored = 0, hits = 0;
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += static_cast<double>(taus[i]);
        if (exited[i]) {
            log_sum += log_exit_norms[i];
            ++hits;
        } else {
            ++censored;
        }
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (long t : taus) ss += (static_cast<double>(t) - mean) * (static_cast<double>(t) - mean);
    st.mean_tau = mean;
    st.ci_halfwidth = n > 1 ? 1.96 * std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    st.censored_frac = static_cast<double>(censored) / static_cast<double>(n);
    st.mean_log_exit_norm = hits > 0 ? log_sum / static_cast<double>(hits) : 0.0;
    st.unreliable = st.censored_frac > 1e-3;
    return st;
}

}  // namespace

ExitRecord simulate_exit(const ModelSpec& model, const Vec& x0, double r_ball, long cap, RngStream& rng) {
    validate_radius(r_ball);
    if (cap < 1) throw ConfigError("simulate_exit: cap must be >= 1");
    if (x0.size() != model.dimension()) throw DimensionError("simulate_exit: x0 dimension mismatch");

    ExitRecord rec;
    if (norm2(x0) > r_ball) {
        rec.exited = true;
        rec.tau = 0;
        rec.exit_point = x0;
        return rec;
    }

    Vec x = x0;
    Vec next(x.size());
    AffineMapSample draw;
    for (long n = 1; n <= cap; ++n) {
        model.sample_into(rng, draw);
        mat_vec_into(next, draw.a, x);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += draw.b[i];
        std::swap(x, next);
        if (max_abs(x) > kOverflowThreshold) {
            rec.exited = true;  // beyond every admissible R
            rec.overflowed = true;
            rec.tau = n;
            rec.exit_point = x;
            return rec;
        }
        if (norm2(x) > r_ball) {
            rec.exited = true;
            rec.tau = n;
            rec.exit_point = x;
            return rec;
        }
    }
    rec.exited = false;
    rec.cap = cap;
    return rec;
}

ExitBatchStats estimate_mean_exit(const ModelSpec& model, const Vec& x0, double r_ball, long replicas, long cap,
                                  std::uint64_t seed, int threads) {
    if (replicas < 2) throw ConfigError("estimate_mean_exit: replicas must be >= 2");
    std::vector<long> taus(static_cast<std::size_t>(replicas), cap);
    std::vector<char> exited(static_cast<std::size_t>(replicas), 0);
    std::vector<double> log_norms(static_cast<std::size_t>(replicas), 0.0);
    RngStream base(seed, 0);
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        RngStream rng = base.substream(kSaltExit, r);
        const ExitRecord rec = simulate_exit(model, x0, r_ball, cap, rng);
        if (rec.exited) {
            taus[r] = rec.tau;
            exited[r] = 1;
            log_norms[r] = std::log(norm2(rec.exit_point));
        }
    });
    return reduce_batch(r_ball, taus, exited, log_norms);
}

SweepRaw exit_sweep_raw(const ModelSpec& model, const Vec& x0, const std::vector<double>& r_grid, long replicas,
                        long cap, std::uint64_t seed, int threads) {
    if (r_grid.empty()) throw ConfigError("exit_sweep: empty R grid");
    for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
        if (!(r_grid[i] < r_grid[i + 1])) throw ConfigError("exit_sweep: R grid must be strictly increasing");
    for (double r : r_grid) validate_radius(r);
    if (replicas < 2) throw ConfigError("exit_sweep: replicas must be >= 2");
    if (cap < 1) throw ConfigError("exit_sweep: cap must be >= 1");
    if (x0.size() != model.dimension()) throw DimensionError("exit_sweep: x0 dimension mismatch");

    const std::size_t m = r_grid.size();
    const std::size_t n = static_cast<std::size_t>(replicas);
    SweepRaw raw;
    raw.r_grid = r_grid;
    raw.cap = cap;
    raw.taus.assign(m, std::vector<long>(n, cap));
    raw.exited.assign(m, std::vector<char>(n, 0));
    raw.log_exit_norms.assign(m, std::vector<double>(n, 0.0));

    RngStream base(seed, 0);
    parallel_for(n, threads, [&](std::size_t r) {
        RngStream rng = base.substream(kSaltExit, r);
        Vec x = x0;
        Vec next(x.size());
        AffineMapSample draw;
        std::size_t pending = 0;  // first grid index not yet crossed

        const double nx0 = norm2(x0);
        while (pending < m && nx0 > r_grid[pending]) {
            raw.taus[pending][r] = 0;
            raw.exited[pending][r] = 1;
            raw.log_exit_norms[pending][r] = std::log(nx0);
            ++pending;
        }
        for (long step = 1; step <= cap && pending < m; ++step) {
            model.sample_into(rng, draw);
            mat_vec_into(next, draw.a, x);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] += draw.b[i];
            std::swap(x, next);
            const bool overflow = max_abs(x) > kOverflowThreshold;
            const double nx = norm2(x);
            while (pending < m && (overflow || nx > r_grid[pending])) {
                raw.taus[pending][r] = step;
                raw.exited[pending][r] = 1;
                raw.log_exit_norms[pending][r] = std::log(nx);
                ++pending;
            }
            if (overflow) break;
        }
    });
    return raw;
}

std::vector<ExitBatchStats> reduce_sweep(const SweepRaw& raw) {
    std::vector<ExitBatchStats> out;
    out.reserve(raw.r_grid.size());
    for (std::size_t j = 0; j < raw.r_grid.size(); ++j)
        out.push_back(reduce_batch(raw.r_grid[j], raw.taus[j], raw.exited[j], raw.log_exit_norms[j]));
    return out;
}

std::vector<ExitBatchStats> exit_sweep(const ModelSpec& model, const Vec& x0, const std::vector<double>& r_grid,
                                       long replicas, long cap, std::uint64_t seed, int threads) {
    return reduce_sweep(exit_sweep_raw(model, x0, r_grid, replicas, cap, seed, threads));
}

double coupled_difference_check(const ModelSpec& model, const Vec& y, const Vec& z, long n, std::uint64_t seed) {
    const std::size_t d = model.dimension();
    if (y.size() != d || z.size() != d) throw DimensionError("coupled_difference_check: dimension mismatch");
    if (n < 1) throw ConfigError("coupled_difference_check: n must be >= 1");

    Vec dy(d);
    for (std::size_t i = 0; i < d; ++i) dy[i] = y[i] - z[i];

    RngStream rng = RngStream(seed, 0).substream(kSaltCouple, 0);
    Vec xy = y, xz = z, next(d);
    Matrix prod = Matrix::identity(d), tmp(d);
    double acc = 0.0;
    AffineMapSample draw;
    double worst = 0.0;

    for (long k = 1; k <= n; ++k) {
        model.sample_into(rng, draw);

        mat_vec_into(next, draw.a, xy);
        for (std::size_t i = 0; i < d; ++i) next[i] += draw.b[i];
        std::swap(xy, next);
        mat_vec_into(next, draw.a, xz);
        for (std::size_t i = 0; i < d; ++i) next[i] += draw.b[i];
        std::swap(xz, next);

        mat_mat_into(tmp, draw.a, prod);
        const double nm = operator_norm(tmp);
        if (nm == 0.0 || !std::isfinite(nm)) break;
        tmp *= (1.0 / nm);
        std::swap(prod, tmp);
        acc += std::log(nm);

        // Compare in the renormalized frame: (X_k(y) - X_k(z)) e^{-acc}
        // against the unit-norm product applied to y - z.
        if (max_abs(xy) > kOverflowThreshold || max_abs(xz) > kOverflowThreshold) break;
        if (std::abs(acc) > 700.0) break;
        const double scale = std::exp(-acc);
        Vec pred = mat_vec(prod, dy);
        double dev = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double got = (xy[i] - xz[i]) * scale;
            dev += (got - pred[i]) * (got - pred[i]);
            ref += pred[i] * pred[i];
        }
        const double rel = std::sqrt(dev) / std::max(std::sqrt(ref), 1e-300);
        worst = std::max(worst, rel);
    }
    return worst;
}

SandwichReport arch_sandwich_check(const ModelSpec& model, const Vec& x0, double r_ball, long replicas, long cap,
                                   std::uint64_t seed, int threads) {
    const ArchModel* arch = model.get_if<ArchModel>();
    if (arch == nullptr) throw ConfigError("arch_sandwich_check: model must be ARCH(p)");
    for (double v : x0)
        if (!(v >= 0.0)) throw ConfigError("arch_sandwich_check: x0 must be componentwise nonnegative");
    if (x0.size() != model.dimension()) throw DimensionError("arch_sandwich_check: x0 dimension mismatch");
    validate_radius(r_ball);
    if (replicas < 1 || cap < 1) throw ConfigError("arch_sandwich_check: replicas and cap must be >= 1");

    const std::size_t p = model.dimension();
    const double r_wide = std::sqrt(static_cast<double>(p)) * r_ball;

    std::vector<char> low_bad(static_cast<std::size_t>(replicas), 0);
    std::vector<char> up_bad(static_cast<std::size_t>(replicas), 0);
    std::vector<char> cens(static_cast<std::size_t>(replicas), 0);

    RngStream base(seed, 0);
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        RngStream rng = base.substream(kSaltSandwich, r);
        Vec x = x0;
        Vec next(p);
        AffineMapSample draw;
        long tau = -1, tau_hat = -1, tau_wide = -1;

        const double n0 = norm2(x0);
        if (n0 > r_ball) tau = 0;
        if (x0[0] > r_ball) tau_hat = 0;  // scalar series value is the first component
        if (n0 > r_wide) tau_wide = 0;

        for (long step = 1; step <= cap; ++step) {
            if (tau >= 0 && tau_hat >= 0 && tau_wide >= 0) break;
            model.sample_into(rng, draw);
            mat_vec_into(next, draw.a, x);
            for (std::size_t i = 0; i < p; ++i) next[i] += draw.b[i];
            std::swap(x, next);
            const bool overflow = max_abs(x) > kOverflowThreshold;
            const double nx = norm2(x);
            if (tau < 0 && (overflow || nx > r_ball)) tau = step;
            if (tau_hat < 0 && (overflow || x[0] > r_ball)) tau_hat = step;
            if (tau_wide < 0 && (overflow || nx > r_wide)) tau_wide = step;
            if (overflow) break;
        }
        if (tau < 0 || tau_hat < 0 || tau_wide < 0) {
            cens[r] = 1;
            return;
        }
        if (!(tau <= tau_hat)) low_bad[r] = 1;
        if (!(tau_hat <= tau_wide + static_cast<long>(p))) up_bad[r] = 1;
    });

    SandwichReport rep;
    for (std::size_t r = 0; r < static_cast<std::size_t>(replicas); ++r) {
        if (cens[r]) {
            ++rep.censored;
            continue;
        }
        ++rep.paths_checked;
        rep.lower_violations += low_bad[r];
        rep.upper_violations += up_bad[r];
    }
    return rep;
}

std::vector<double> long_run_norm_samples(const ModelSpec& model, long count, long burn_in, long thin,
                                          std::uint64_t seed) {
    if (count < 1 || burn_in < 0 || thin < 1) throw ConfigError("long_run_norm_samples: bad parameters");
    RngStream rng = RngStream(seed, 0).substream(kSaltExit, 0xBEEF);
    const std::size_t d = model.dimension();
    Vec x(d, 0.0), next(d);
    AffineMapSample draw;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    long step = 0;
    while (static_cast<long>(out.size()) < count) {
        model.sample_into(rng, draw);
        mat_vec_into(next, draw.a, x);
        for (std::size_t i = 0; i < d; ++i) next[i] += draw.b[i];
        std::swap(x, next);
        ++step;
        if (max_abs(x) > kOverflowThreshold)
            throw NumericalError("long_run_norm_samples: trajectory overflowed; model is not contractive");
        if (step > burn_in && (step - burn_in) % thin == 0) out.push_back(norm2(x));
    }
    return out;
}

}  // namespace kesten
