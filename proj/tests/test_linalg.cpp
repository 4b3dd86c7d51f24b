#include <doctest.h>

#include <cmath>

#include "kesten/errors.hpp"
#include "kesten/linalg.hpp"
#include "kesten/models.hpp"
#include "kesten/rng.hpp"

using namespace kesten;

namespace {

Matrix random_matrix(std::size_t d, RngStream& rng, double scale = 1.0) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.next_gaussian(0.0, scale);
    return m;
}

// Determinant by cofactor expansion, the brute-force cross-check for small d.
double cofactor_det(const Matrix& m) {
    const std::size_t d = m.dim();
    if (d == 1) return m(0, 0);
    double det = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        Matrix minor(d - 1);
        for (std::size_t r = 1; r < d; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < d; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        det += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
    }
    return det;
}

double max_entry_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("operator norm on simple matrices") {
    CHECK(operator_norm(Matrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix diag(2);
    diag(0, 0) = 3.0;
    diag(1, 1) = -4.0;
    CHECK(operator_norm(diag) == doctest::Approx(4.0).epsilon(1e-9));

    CHECK(operator_norm(Matrix(4)) == 0.0);

    // all-ones start vector is orthogonal to the top eigenvector here
    Matrix tricky(2);
    tricky(0, 0) = 1.0;
    tricky(0, 1) = -1.0;
    tricky(1, 0) = -1.0;
    tricky(1, 1) = 1.0;
    CHECK(operator_norm(tricky) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("operator norm matches the unit-sphere sampling oracle") {
    RngStream rng(42, 0);
    const Matrix m = random_matrix(5, rng);
    const double norm = operator_norm(m);

    double best = 0.0;
    Vec x(5);
    for (int it = 0; it < 100000; ++it) {
        for (auto& v : x) v = rng.next_gaussian(0.0, 1.0);
        const double n = norm2(x);
        if (n == 0.0) continue;
        best = std::max(best, norm2(mat_vec(m, x)) / n);
    }
    CHECK(best <= norm * (1.0 + 1e-9));          // the sup is never exceeded
    CHECK(norm - best <= 1e-3 * norm);           // and is approached within 1e-3 relative
}

TEST_CASE("inversion basics") {
    CHECK(max_entry_diff(invert(Matrix::identity(4)), Matrix::identity(4)) == 0.0);

    Matrix diag(2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 4.0;
    const Matrix inv = invert(diag);
    CHECK(inv(0, 0) == doctest::Approx(0.5));
    CHECK(inv(1, 1) == doctest::Approx(0.25));
    CHECK(inv(0, 1) == 0.0);

    Matrix singular(2);
    singular(0, 0) = 1.0;  // diag(1, 0)
    CHECK_THROWS_AS(invert(singular), SingularMatrixError);
}

TEST_CASE("ARCH companion matrices are invertible, det = +-alpha_p w^2") {
    for (std::size_t p = 1; p <= 4; ++p) {
        std::vector<double> alphas(p + 1, 0.0);
        alphas[0] = 1.0;
        alphas[1] = 0.5;
        alphas[p] = 0.25;
        const double w = 1.7;
        const AffineMapSample s = arch_affine_from_noise(alphas, w);
        CHECK(std::abs(cofactor_det(s.a)) == doctest::Approx(alphas[p] * w * w).epsilon(1e-12));
        const Matrix inv = invert(s.a);
        CHECK(max_entry_diff(mat_mat(s.a, inv), Matrix::identity(p)) < 1e-12);
    }
}

TEST_CASE("invert of invert returns the original on well-conditioned inputs") {
    RngStream rng(7, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + trial % 6;
        Matrix m = random_matrix(d, rng);
        for (std::size_t i = 0; i < d; ++i) m(i, i) += 3.0;  // keep it well away from singular
        CHECK(max_entry_diff(invert(invert(m)), m) < 1e-8);
        CHECK(max_entry_diff(mat_mat(m, invert(m)), Matrix::identity(d)) < 1e-10);
    }
}

TEST_CASE("matrix-vector products") {
    const Vec x = {1.0, 1.0};
    CHECK(mat_vec(Matrix::identity(2), x) == x);
    CHECK(mat_vec(Matrix(2), x) == Vec{0.0, 0.0});

    Matrix m(2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 3.0;
    m(1, 1) = 4.0;
    CHECK(mat_vec(m, x) == Vec{3.0, 7.0});

    CHECK_THROWS_AS(mat_vec(m, Vec{1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(mat_mat(m, Matrix(3)), DimensionError);
}

TEST_CASE("sub-multiplicativity and the norm lower bound hold on sampled matrices") {
    RngStream rng(99, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + trial % 5;
        const Matrix m = random_matrix(d, rng, 2.0);
        const Matrix n = random_matrix(d, rng, 0.5);
        CHECK(operator_norm(mat_mat(m, n)) <= operator_norm(m) * operator_norm(n) * (1.0 + 1e-9));

        Vec x(d);
        for (auto& v : x) v = rng.next_gaussian(0.0, 1.0);
        const double nx = norm2(x);
        if (nx > 0.0) CHECK(operator_norm(m) >= norm2(mat_vec(m, x)) / nx - 1e-9);
    }
}

TEST_CASE("cholesky handles semidefinite inputs and rejects bad ones") {
    Matrix rank1(2);
    rank1(0, 0) = rank1(0, 1) = rank1(1, 0) = rank1(1, 1) = 1.0;
    const Matrix l = cholesky_psd(rank1);
    CHECK(max_entry_diff(mat_mat(l, transpose(l)), rank1) < 1e-12);

    Matrix asym(2);
    asym(0, 0) = 1.0;
    asym(0, 1) = 0.5;
    asym(1, 0) = 0.2;
    asym(1, 1) = 1.0;
    CHECK_THROWS_AS(cholesky_psd(asym), ConfigError);

    Matrix indef(2);
    indef(0, 0) = 1.0;
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(cholesky_psd(indef), ConfigError);
}
