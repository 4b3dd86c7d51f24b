#ifndef KESTEN_MODELS_HPP
#define KESTEN_MODELS_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "kesten/linalg.hpp"
#include "kesten/rng.hpp"

namespace kesten {

// One realized (A, B) draw of the affine map x -> Ax + B.
struct AffineMapSample {
    Matrix a;
    Vec b;
};

// Scalar law used for 1-d models and for noise descriptors.
struct ScalarDist {
    enum class Kind { Constant, TwoPoint, Uniform, Gaussian, Lognormal, Pareto };

    Kind kind = Kind::Constant;
    // Meaning per kind: Constant{value} TwoPoint{lo_value=x, hi_value=y, p=P(x)}
    // Uniform{lo, hi} Gaussian{mean, sd} Lognormal{mu, sigma} Pareto{index, scale}.
    double p1 = 0.0;
    double p2 = 0.0;
    double prob = 0.0;

    static ScalarDist constant(double value);
    static ScalarDist two_point(double x, double y, double p_x);
    static ScalarDist uniform(double lo, double hi);
    static ScalarDist gaussian(double mean, double sd);
    static ScalarDist lognormal(double mu, double sigma);
    static ScalarDist pareto(double index, double scale);

    double sample(RngStream& rng) const;
};

struct ExplicitModel {
    struct Atom {
        double prob;
        Matrix a;
        Vec b;
    };
    std::vector<Atom> support;
};

struct ScalarModel {
    ScalarDist law_a;
    ScalarDist law_b;
};

struct SgdQuadraticModel {
    double eta = 0.0;
    int batch = 1;
    Matrix sigma;    // data covariance
    double sigma_b = 0.0;
    Matrix chol;     // Cholesky factor of sigma, fixed at construction
};

struct SgdMomentumModel {
    double gamma = 0.0;
    SgdQuadraticModel inner;
};

struct ArchModel {
    std::vector<double> alphas;  // alpha_0 .. alpha_p
    double noise_mean = 0.0;
    double noise_sd = 1.0;
};

struct GarchModel {
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    std::vector<double> betas;  // beta_1 .. beta_q
    double noise_mean = 0.0;
    double noise_sd = 1.0;
};

// User-specified sampler; not expressible in the config file, available from
// C++ and the Python bindings for audits of nonstandard laws.
struct CustomModel {
    std::size_t dim = 0;
    std::function<AffineMapSample(RngStream&)> sampler;
    std::string label;
};

class ModelSpec {
public:
    using Variant =
        std::variant<ExplicitModel, ScalarModel, SgdQuadraticModel, SgdMomentumModel, ArchModel, GarchModel, CustomModel>;

    // Factories validate parameters and throw ConfigError on violations.
    static ModelSpec explicit_support(std::vector<ExplicitModel::Atom> atoms);
    static ModelSpec scalar(ScalarDist law_a, ScalarDist law_b);
    static ModelSpec sgd_quadratic(double eta, int batch, Matrix sigma, double sigma_b);
    static ModelSpec sgd_momentum(double eta, double gamma, int batch, Matrix sigma, double sigma_b);
    static ModelSpec arch(std::vector<double> alphas, double noise_mean = 0.0, double noise_sd = 1.0);
    static ModelSpec garch(double alpha0, double alpha1, std::vector<double> betas, double noise_mean = 0.0,
                           double noise_sd = 1.0);
    static ModelSpec custom(std::size_t dim, std::function<AffineMapSample(RngStream&)> sampler, std::string label);

    std::size_t dimension() const;

    AffineMapSample sample(RngStream& rng) const;

    // Allocation-free variant for hot loops; resizes `out` on first use.
    void sample_into(RngStream& rng, AffineMapSample& out) const;

    const Variant& v() const { return v_; }

    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

private:
    explicit ModelSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// sigma_t^2 * w^2 with sigma_t^2 = alpha_0 + sum_i alpha_i * prev[i-1].
double arch_squared_series_step(const Vec& prev_squares, double w, const std::vector<double>& alphas);

// The (A, B) pair of the ARCH companion layout for a given noise draw w;
// exposed so tests can pin the layout entrywise.
AffineMapSample arch_affine_from_noise(const std::vector<double>& alphas, double w);

// Hessian/gradient samples H = (1/m) sum a a^T, g = (1/m) sum b_i a_i behind
// both SGD constructions; draw order is fixed (per point: d gaussians for a,
// then one for b).
void sample_sgd_parts(const SgdQuadraticModel& m, RngStream& rng, Matrix& h, Vec& g);

}  // namespace kesten

#endif  // KESTEN_MODELS_HPP
