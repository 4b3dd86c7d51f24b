#include "kesten/models.hpp"

#include <cmath>
#include <utility>

#include "kesten/errors.hpp"

namespace kesten {

ScalarDist ScalarDist::constant(double value) {
    ScalarDist d;
    d.kind = Kind::Constant;
    d.p1 = value;
    return d;
}

ScalarDist ScalarDist::two_point(double x, double y, double p_x) {
    if (!(p_x >= 0.0 && p_x <= 1.0)) throw ConfigError("two_point: probability outside [0,1]");
    ScalarDist d;
    d.kind = Kind::TwoPoint;
    d.p1 = x;
    d.p2 = y;
    d.prob = p_x;
    return d;
}

ScalarDist ScalarDist::uniform(double lo, double hi) {
    if (!(lo <= hi)) throw ConfigError("uniform: lo > hi");
    ScalarDist d;
    d.kind = Kind::Uniform;
    d.p1 = lo;
    d.p2 = hi;
    return d;
}

ScalarDist ScalarDist::gaussian(double mean, double sd) {
    if (!(sd >= 0.0)) throw ConfigError("gaussian: sd < 0");
    ScalarDist d;
    d.kind = Kind::Gaussian;
    d.p1 = mean;
    d.p2 = sd;
    return d;
}

ScalarDist ScalarDist::lognormal(double mu, double sigma) {
    if (!(sigma >= 0.0)) throw ConfigError("lognormal: sigma < 0");
    ScalarDist d;
    d.kind = Kind::Lognormal;
    d.p1 = mu;
    d.p2 = sigma;
    return d;
}

ScalarDist ScalarDist::pareto(double index, double scale) {
    if (!(index > 0.0) || !(scale > 0.0)) throw ConfigError("pareto: index and scale must be positive");
    ScalarDist d;
    d.kind = Kind::Pareto;
    d.p1 = index;
    d.p2 = scale;
    return d;
}

double ScalarDist::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::Constant: return p1;
        case Kind::TwoPoint: return rng.next_uniform() < prob ? p1 : p2;
        case Kind::Uniform: return p1 + (p2 - p1) * rng.next_uniform();
        case Kind::Gaussian: return rng.next_gaussian(p1, p2);
        case Kind::Lognormal: return std::exp(rng.next_gaussian(p1, p2));
        case Kind::Pareto: return p2 * std::pow(rng.next_uniform(), -1.0 / p1);
    }
    throw NumericalError("ScalarDist: unreachable kind");
}

ModelSpec ModelSpec::explicit_support(std::vector<ExplicitModel::Atom> atoms) {
    if (atoms.empty()) throw ConfigError("explicit model: empty support");
    const std::size_t d = atoms.front().a.dim();
    double total = 0.0;
    for (const auto& atom : atoms) {
        if (!(atom.prob > 0.0)) throw ConfigError("explicit model: probabilities must be positive");
        if (atom.a.dim() != d || atom.b.size() != d)
            throw ConfigError("explicit model: inconsistent dimensions in support");
        if (!atom.a.all_finite()) throw ConfigError("explicit model: non-finite matrix entry");
        total += atom.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("explicit model: probabilities must sum to 1");
    return ModelSpec(ExplicitModel{std::move(atoms)});
}

ModelSpec ModelSpec::scalar(ScalarDist law_a, ScalarDist law_b) {
    return ModelSpec(ScalarModel{law_a, law_b});
}

ModelSpec ModelSpec::sgd_quadratic(double eta, int batch, Matrix sigma, double sigma_b) {
    if (!(eta >= 0.0)) throw ConfigError("sgd_quadratic: eta must be >= 0");
    if (batch < 1) throw ConfigError("sgd_quadratic: batch size must be >= 1");
    if (!(sigma_b >= 0.0)) throw ConfigError("sgd_quadratic: sigma_b must be >= 0");
    if (sigma.dim() == 0) throw ConfigError("sgd_quadratic: Sigma is empty");
    SgdQuadraticModel m;
    m.eta = eta;
    m.batch = batch;
    m.chol = cholesky_psd(sigma);
    m.sigma = std::move(sigma);
    m.sigma_b = sigma_b;
    return ModelSpec(std::move(m));
}

ModelSpec ModelSpec::sgd_momentum(double eta, double gamma, int batch, Matrix sigma, double sigma_b) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("sgd_momentum: gamma must lie in [0,1)");
    ModelSpec inner = sgd_quadratic(eta, batch, std::move(sigma), sigma_b);
    return ModelSpec(SgdMomentumModel{gamma, std::get<SgdQuadraticModel>(inner.v_)});
}

ModelSpec ModelSpec::arch(std::vector<double> alphas, double noise_mean, double noise_sd) {
    if (alphas.size() < 2) throw ConfigError("arch: need alpha_0 and at least alpha_1");
    for (double a : alphas)
        if (!(a >= 0.0)) throw ConfigError("arch: coefficients must be nonnegative");
    if (!(alphas.front() > 0.0 && alphas.back() > 0.0))
        throw ConfigError("arch: alpha_0 * alpha_p must be positive");
    if (!(alphas[1] > 0.0)) throw ConfigError("arch: alpha_1 must be positive");
    if (!(noise_sd >= 0.0)) throw ConfigError("arch: noise sd must be >= 0");
    return ModelSpec(ArchModel{std::move(alphas), noise_mean, noise_sd});
}

ModelSpec ModelSpec::garch(double alpha0, double alpha1, std::vector<double> betas, double noise_mean,
                           double noise_sd) {
    if (!(alpha0 > 0.0) || !(alpha1 > 0.0)) throw ConfigError("garch: alpha_0 and alpha_1 must be positive");
    if (betas.empty()) throw ConfigError("garch: need at least beta_1");
    for (double b : betas)
        if (!(b >= 0.0)) throw ConfigError("garch: betas must be nonnegative");
    if (!(betas.back() > 0.0)) throw ConfigError("garch: beta_q must be positive");
    if (!(noise_sd >= 0.0)) throw ConfigError("garch: noise sd must be >= 0");
    return ModelSpec(GarchModel{alpha0, alpha1, std::move(betas), noise_mean, noise_sd});
}

ModelSpec ModelSpec::custom(std::size_t dim, std::function<AffineMapSample(RngStream&)> sampler, std::string label) {
    if (dim == 0 || !sampler) throw ConfigError("custom model: need dimension and sampler");
    return ModelSpec(CustomModel{dim, std::move(sampler), std::move(label)});
}

std::size_t ModelSpec::dimension() const {
    return std::visit(
        [](const auto& m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ExplicitModel>) return m.support.front().a.dim();
            else if constexpr (std::is_same_v<T, ScalarModel>) return 1;
            else if constexpr (std::is_same_v<T, SgdQuadraticModel>) return m.sigma.dim();
            else if constexpr (std::is_same_v<T, SgdMomentumModel>) return 2 * m.inner.sigma.dim();
            else if constexpr (std::is_same_v<T, ArchModel>) return m.alphas.size() - 1;
            else if constexpr (std::is_same_v<T, GarchModel>) return m.betas.size();
            else return m.dim;
        },
        v_);
}

void sample_sgd_parts(const SgdQuadraticModel& m, RngStream& rng, Matrix& h, Vec& g) {
    const std::size_t d = m.sigma.dim();
    if (h.dim() != d) h = Matrix(d);
    else std::fill(h.data().begin(), h.data().end(), 0.0);
    g.assign(d, 0.0);

    Vec z(d), a(d);
    for (int i = 0; i < m.batch; ++i) {
        for (std::size_t k = 0; k < d; ++k) z[k] = rng.next_gaussian(0.0, 1.0);
        for (std::size_t r = 0; r < d; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c <= r; ++c) s += m.chol(r, c) * z[c];
            a[r] = s;
        }
        const double b = rng.next_gaussian(0.0, m.sigma_b);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) h(r, c) += a[r] * a[c];
            g[r] += b * a[r];
        }
    }
    const double inv_m = 1.0 / static_cast<double>(m.batch);
    h *= inv_m;
    for (double& v : g) v *= inv_m;
}

AffineMapSample arch_affine_from_noise(const std::vector<double>& alphas, double w) {
    const std::size_t p = alphas.size() - 1;
    const double w2 = w * w;
    AffineMapSample s;
    s.a = Matrix(p);
    s.b.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) s.a(0, j) = alphas[j + 1] * w2;
    for (std::size_t i = 1; i < p; ++i) s.a(i, i - 1) = 1.0;
    s.b[0] = alphas[0] * w2;
    return s;
}

void ModelSpec::sample_into(RngStream& rng, AffineMapSample& out) const {
    const std::size_t d = dimension();
    if (out.a.dim() != d) out.a = Matrix(d);
    if (out.b.size() != d) out.b.assign(d, 0.0);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ExplicitModel>) {
                const double u = rng.next_uniform();
                double acc = 0.0;
                const ExplicitModel::Atom* chosen = &m.support.back();
                for (const auto& atom : m.support) {
                    acc += atom.prob;
                    if (u < acc) { chosen = &atom; break; }
                }
                out.a = chosen->a;
                out.b = chosen->b;
            } else if constexpr (std::is_same_v<T, ScalarModel>) {
                out.a(0, 0) = m.law_a.sample(rng);
                out.b[0] = m.law_b.sample(rng);
            } else if constexpr (std::is_same_v<T, SgdQuadraticModel>) {
                Matrix h;
                Vec g;
                sample_sgd_parts(m, rng, h, g);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) out.a(i, j) = (i == j ? 1.0 : 0.0) - m.eta * h(i, j);
                for (std::size_t i = 0; i < d; ++i) out.b[i] = m.eta * g[i];
            } else if constexpr (std::is_same_v<T, SgdMomentumModel>) {
                const std::size_t dd = m.inner.sigma.dim();
                Matrix h;
                Vec g;
                sample_sgd_parts(m.inner, rng, h, g);
                const double eta = m.inner.eta;
                const double gm = m.gamma;
                std::fill(out.a.data().begin(), out.a.data().end(), 0.0);
                for (std::size_t i = 0; i < dd; ++i) {
                    for (std::size_t j = 0; j < dd; ++j) {
                        out.a(i, j) = (i == j ? 1.0 : 0.0) - eta * (1.0 - gm) * h(i, j);
                        out.a(dd + i, j) = (1.0 - gm) * h(i, j);
                    }
                    out.a(i, dd + i) = -eta * gm;
                    out.a(dd + i, dd + i) = gm;
                    out.b[i] = eta * (1.0 - gm) * g[i];
                    out.b[dd + i] = -(1.0 - gm) * g[i];
                }
            } else if constexpr (std::is_same_v<T, ArchModel>) {
                const double w = rng.next_gaussian(m.noise_mean, m.noise_sd);
                const double w2 = w * w;
                std::fill(out.a.data().begin(), out.a.data().end(), 0.0);
                for (std::size_t j = 0; j < d; ++j) out.a(0, j) = m.alphas[j + 1] * w2;
                for (std::size_t i = 1; i < d; ++i) out.a(i, i - 1) = 1.0;
                std::fill(out.b.begin(), out.b.end(), 0.0);
                out.b[0] = m.alphas[0] * w2;
            } else if constexpr (std::is_same_v<T, GarchModel>) {
                const double w = rng.next_gaussian(m.noise_mean, m.noise_sd);
                std::fill(out.a.data().begin(), out.a.data().end(), 0.0);
                out.a(0, 0) = m.alpha1 * w * w + m.betas[0];
                for (std::size_t j = 1; j < d; ++j) out.a(0, j) = m.betas[j];
                for (std::size_t i = 1; i < d; ++i) out.a(i, i - 1) = 1.0;
                std::fill(out.b.begin(), out.b.end(), 0.0);
                out.b[0] = m.alpha0;
            } else {
                out = m.sampler(rng);
                if (out.a.dim() != d || out.b.size() != d)
                    throw DimensionError("custom model: sampler returned wrong dimension");
            }
        },
        v_);
}

AffineMapSample ModelSpec::sample(RngStream& rng) const {
    AffineMapSample s;
    sample_into(rng, s);
    return s;
}

double arch_squared_series_step(const Vec& prev_squares, double w, const std::vector<double>& alphas) {
    if (prev_squares.size() + 1 != alphas.size())
        throw DimensionError("arch_squared_series_step: history length must equal p");
    double sigma2 = alphas[0];
    for (std::size_t i = 0; i < prev_squares.size(); ++i) sigma2 += alphas[i + 1] * prev_squares[i];
    return sigma2 * w * w;
}

}  // namespace kesten
