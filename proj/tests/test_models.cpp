#include <doctest.h>

#include <cmath>

#include "kesten/errors.hpp"
#include "kesten/models.hpp"

using namespace kesten;

TEST_CASE("sgd with eta = 0 degenerates to the identity map") {
    const ModelSpec m = ModelSpec::sgd_quadratic(0.0, 4, Matrix::identity(3), 1.0);
    RngStream rng(1, 0);
    for (int i = 0; i < 10; ++i) {
        const AffineMapSample s = m.sample(rng);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 3; ++c) CHECK(s.a(r, c) == (r == c ? 1.0 : 0.0));
            CHECK(s.b[r] == 0.0);
        }
    }
}

TEST_CASE("momentum blocks at gamma = 0 reproduce the vanilla construction") {
    const double eta = 0.37;
    const ModelSpec vanilla = ModelSpec::sgd_quadratic(eta, 3, Matrix::identity(2), 0.8);
    const ModelSpec momentum = ModelSpec::sgd_momentum(eta, 0.0, 3, Matrix::identity(2), 0.8);

    RngStream rng_v(11, 0), rng_m(11, 0);  // identical streams -> identical data draws
    const AffineMapSample v = vanilla.sample(rng_v);
    const AffineMapSample c = momentum.sample(rng_m);

    REQUIRE(c.a.dim() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(c.a(i, j) == v.a(i, j));                                 // top-left = I - eta H
            CHECK(c.a(2 + i, j) == doctest::Approx((((i == j) ? 1.0 : 0.0) - v.a(i, j)) / eta));  // H
            CHECK(c.a(i, 2 + j) == 0.0);                                    // -eta*gamma*I with gamma=0
            CHECK(c.a(2 + i, 2 + j) == 0.0);                                // gamma*I
        }
        CHECK(c.b[i] == v.b[i]);
        CHECK(c.b[2 + i] == doctest::Approx(-v.b[i] / eta));
    }
}

TEST_CASE("momentum state is 2d-dimensional") {
    const ModelSpec m = ModelSpec::sgd_momentum(0.1, 0.5, 1, Matrix::identity(4), 1.0);
    CHECK(m.dimension() == 8);
    RngStream rng(3, 0);
    const AffineMapSample s = m.sample(rng);
    CHECK(s.a.dim() == 8);
    CHECK(s.b.size() == 8);
}

TEST_CASE("ARCH companion layout is pinned") {
    const std::vector<double> alphas = {1.0, 0.5, 0.25};
    const double w = 1.7;
    const AffineMapSample s = arch_affine_from_noise(alphas, w);
    REQUIRE(s.a.dim() == 2);
    CHECK(s.a(0, 0) == 0.5 * w * w);
    CHECK(s.a(0, 1) == 0.25 * w * w);
    CHECK(s.a(1, 0) == 1.0);
    CHECK(s.a(1, 1) == 0.0);
    CHECK(s.b[0] == 1.0 * w * w);
    CHECK(s.b[1] == 0.0);

    // the sampler realizes the same layout from its own noise draw
    const ModelSpec model = ModelSpec::arch(alphas);
    RngStream rng(21, 0), probe(21, 0);
    const AffineMapSample drawn = model.sample(rng);
    const double w_drawn = probe.next_gaussian(0.0, 1.0);
    const AffineMapSample rebuilt = arch_affine_from_noise(alphas, w_drawn);
    CHECK(drawn.a(0, 0) == rebuilt.a(0, 0));
    CHECK(drawn.b[0] == rebuilt.b[0]);
}

TEST_CASE("garch companion layout") {
    const ModelSpec model = ModelSpec::garch(0.5, 0.3, {0.2, 0.1});
    CHECK(model.dimension() == 2);
    RngStream rng(4, 0), probe(4, 0);
    const AffineMapSample s = model.sample(rng);
    const double w = probe.next_gaussian(0.0, 1.0);
    CHECK(s.a(0, 0) == 0.3 * w * w + 0.2);
    CHECK(s.a(0, 1) == 0.1);
    CHECK(s.a(1, 0) == 1.0);
    CHECK(s.b[0] == 0.5);
    CHECK(s.b[1] == 0.0);
}

TEST_CASE("dimension per variant") {
    CHECK(ModelSpec::scalar(ScalarDist::constant(1.0), ScalarDist::constant(0.0)).dimension() == 1);
    CHECK(ModelSpec::arch({1.0, 0.5, 0.5, 0.25}).dimension() == 3);  // alpha_0..alpha_3 -> p = 3
    CHECK(ModelSpec::garch(1.0, 0.5, {0.1, 0.1, 0.2}).dimension() == 3);
    CHECK(ModelSpec::sgd_quadratic(0.1, 1, Matrix::identity(5), 1.0).dimension() == 5);
}

TEST_CASE("arch squared-series step") {
    CHECK(arch_squared_series_step({0.0, 0.0}, 1.0, {2.0, 0.5, 0.25}) == 2.0);
    CHECK(arch_squared_series_step({2.0}, 2.0, {1.0, 0.5}) == 8.0);  // (1 + 0.5*2) * 4

    // one step of the vectorized process equals (scalar step, shifted history)
    for (std::size_t p = 1; p <= 4; ++p) {
        std::vector<double> alphas(p + 1);
        for (std::size_t i = 0; i <= p; ++i) alphas[i] = 1.0 / static_cast<double>(i + 1);
        RngStream rng(77 + p, 0);
        Vec state(p);
        for (auto& v : state) v = rng.next_uniform() * 3.0;
        const double w = rng.next_gaussian(0.0, 1.0);
        const AffineMapSample s = arch_affine_from_noise(alphas, w);
        const Vec next = [&] {
            Vec out = mat_vec(s.a, state);
            for (std::size_t i = 0; i < p; ++i) out[i] += s.b[i];
            return out;
        }();
        CHECK(next[0] == doctest::Approx(arch_squared_series_step(state, w, alphas)).epsilon(1e-12));
        for (std::size_t i = 1; i < p; ++i) CHECK(next[i] == state[i - 1]);
    }
}

TEST_CASE("explicit sampler frequencies match the support probabilities") {
    Matrix two(1), half(1);
    two(0, 0) = 2.0;
    half(0, 0) = 0.5;
    const ModelSpec m = ModelSpec::explicit_support({{0.3, two, Vec{0.0}}, {0.7, half, Vec{0.0}}});
    RngStream rng(55, 0);
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        if (m.sample(rng).a(0, 0) == 2.0) ++hits;
    const double freq = static_cast<double>(hits) / n;
    CHECK(std::abs(freq - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / n));
}

TEST_CASE("arch/garch iterates stay componentwise nonnegative") {
    std::vector<ModelSpec> models;
    models.push_back(ModelSpec::arch({1.0, 0.5, 0.25}));
    models.push_back(ModelSpec::garch(0.5, 0.3, {0.2, 0.1}));
    for (const ModelSpec& m : models) {
        RngStream rng(8, 0);
        Vec x(m.dimension(), 0.5);
        AffineMapSample s;
        for (int step = 0; step < 200; ++step) {
            m.sample_into(rng, s);
            Vec next = mat_vec(s.a, x);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] += s.b[i];
            x = next;
            for (double v : x) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("sgd sample matrices concentrate as the batch grows") {
    auto mean_dev = [](int batch) {
        const ModelSpec m = ModelSpec::sgd_quadratic(0.1, batch, Matrix::identity(2), 0.0);
        RngStream rng(13, 0);
        double acc = 0.0;
        for (int i = 0; i < 50; ++i) {
            const AffineMapSample s = m.sample(rng);
            Matrix dev = s.a;
            dev(0, 0) -= 0.9;  // I - eta I with eta = 0.1
            dev(1, 1) -= 0.9;
            acc += operator_norm(dev);
        }
        return acc / 50.0;
    };
    CHECK(mean_dev(512) < mean_dev(8));
}

TEST_CASE("constructor validation") {
    Matrix two(1);
    two(0, 0) = 2.0;
    CHECK_THROWS_AS(ModelSpec::explicit_support({{0.5, two, Vec{0.0}}, {0.4, two, Vec{0.0}}}), ConfigError);
    CHECK_THROWS_AS(ModelSpec::explicit_support({}), ConfigError);
    CHECK_THROWS_AS(ModelSpec::arch({1.0, 0.0, 0.5}), ConfigError);   // alpha_1 = 0 rejected
    CHECK_THROWS_AS(ModelSpec::arch({1.0, 0.5, 0.0}), ConfigError);   // alpha_p = 0
    CHECK_THROWS_AS(ModelSpec::arch({0.0, 0.5}), ConfigError);        // alpha_0 = 0
    CHECK_THROWS_AS(ModelSpec::garch(1.0, 0.5, {0.1, 0.0}), ConfigError);  // beta_q = 0
    CHECK_THROWS_AS(ModelSpec::garch(0.0, 0.5, {0.1}), ConfigError);
    CHECK_THROWS_AS(ScalarDist::two_point(1.0, 2.0, 1.5), ConfigError);
    CHECK_THROWS_AS(ModelSpec::sgd_momentum(0.1, 1.0, 1, Matrix::identity(2), 1.0), ConfigError);
    CHECK_THROWS_AS(ModelSpec::sgd_quadratic(-0.1, 1, Matrix::identity(2), 1.0), ConfigError);
    CHECK_THROWS_AS(ScalarDist::pareto(0.0, 1.0), ConfigError);
}

TEST_CASE("scalar distributions sample their supports") {
    RngStream rng(17, 0);
    const ScalarDist c = ScalarDist::constant(2.5);
    CHECK(c.sample(rng) == 2.5);

    const ScalarDist tp = ScalarDist::two_point(-1.0, 3.0, 0.5);
    for (int i = 0; i < 100; ++i) {
        const double v = tp.sample(rng);
        CHECK((v == -1.0 || v == 3.0));
    }

    const ScalarDist u = ScalarDist::uniform(2.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double v = u.sample(rng);
        CHECK(v >= 2.0);
        CHECK(v <= 5.0);
    }

    const ScalarDist par = ScalarDist::pareto(0.5, 1.0);
    for (int i = 0; i < 100; ++i) CHECK(par.sample(rng) >= 1.0);

    const ScalarDist ln = ScalarDist::lognormal(0.0, 1.0);
    for (int i = 0; i < 100; ++i) CHECK(ln.sample(rng) > 0.0);
}
