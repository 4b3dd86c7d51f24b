#include "kesten/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "kesten/errors.hpp"

namespace kesten {

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

Matrix& Matrix::operator*=(double c) {
    for (double& v : a_) v *= c;
    return *this;
}

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionError("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

Vec mat_vec(const Matrix& m, const Vec& x) {
    if (m.dim() != x.size()) throw DimensionError("mat_vec: size mismatch");
    const std::size_t d = m.dim();
    Vec y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix mat_mat(const Matrix& m, const Matrix& n) {
    if (m.dim() != n.dim()) throw DimensionError("mat_mat: size mismatch");
    const std::size_t d = m.dim();
    Matrix r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += m(i, k) * n(k, j);
            r(i, j) = s;
        }
    return r;
}

Matrix transpose(const Matrix& m) {
    const std::size_t d = m.dim();
    Matrix r(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r(j, i) = m(i, j);
    return r;
}

void mat_vec_into(Vec& out, const Matrix& m, const Vec& x) {
    if (m.dim() != x.size()) throw DimensionError("mat_vec_into: size mismatch");
    const std::size_t d = m.dim();
    out.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += m(i, j) * x[j];
        out[i] = s;
    }
}

void mat_mat_into(Matrix& out, const Matrix& m, const Matrix& n) {
    if (m.dim() != n.dim()) throw DimensionError("mat_mat_into: size mismatch");
    const std::size_t d = m.dim();
    if (out.dim() != d) out = Matrix(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += m(i, k) * n(k, j);
            out(i, j) = s;
        }
}

namespace {

// One power-iteration run on G = M^T M from a given start; returns the
// converged Rayleigh quotient (largest eigenvalue of G along that orbit).
double rayleigh_from(const Matrix& g, Vec x) {
    const double nx = norm2(x);
    if (nx == 0.0) return 0.0;
    for (double& v : x) v /= nx;
    double lam = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vec y = mat_vec(g, x);
        const double ny = norm2(y);
        if (ny == 0.0) return 0.0;  // start vector lies in the kernel
        for (double& v : y) v /= ny;
        const double next = dot(y, mat_vec(g, y));
        x = std::move(y);
        if (std::abs(next - lam) <= 1e-12 * std::max(std::abs(next), 1.0)) return next;
        lam = next;
    }
    return lam;
}

}  // namespace

double operator_norm(const Matrix& m) {
    const std::size_t d = m.dim();
    if (d == 0) return 0.0;
    bool nonzero = false;
    for (double v : m.data())
        if (v != 0.0) { nonzero = true; break; }
    if (!nonzero) return 0.0;

    const Matrix g = mat_mat(transpose(m), m);

    // Deterministic starts. All-ones alone can be exactly orthogonal to the
    // top eigenvector (e.g. [[1,-1],[-1,1]]), hence the extra two.
    Vec ones(d, 1.0);
    Vec alt(d);
    for (std::size_t i = 0; i < d; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    Vec hash(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t z = (i + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        hash[i] = 0.25 + static_cast<double>(z >> 40) / static_cast<double>(1ull << 24);
    }

    double best = 0.0;
    for (const Vec* start : {&ones, &alt, &hash})
        best = std::max(best, rayleigh_from(g, *start));
    return std::sqrt(std::max(best, 0.0));
}

Matrix invert(const Matrix& m) {
    const std::size_t d = m.dim();
    if (d == 0) return m;

    Matrix a = m;
    Matrix inv = Matrix::identity(d);

    // Row scales for the relative pivot threshold.
    Vec scale(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) scale[i] = std::max(scale[i], std::abs(a(i, j)));

    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        double best = -1.0;
        for (std::size_t r = col; r < d; ++r) {
            const double s = scale[perm[r]] > 0.0 ? scale[perm[r]] : 1.0;
            const double v = std::abs(a(perm[r], col)) / s;
            if (v > best) { best = v; piv = r; }
        }
        std::swap(perm[col], perm[piv]);
        const std::size_t pr = perm[col];
        const double p = a(pr, col);
        const double rs = scale[pr] > 0.0 ? scale[pr] : 1.0;
        if (std::abs(p) < 1e-12 * rs || p == 0.0)
            throw SingularMatrixError("invert: pivot below 1e-12 relative threshold");
        const double ip = 1.0 / p;
        for (std::size_t j = 0; j < d; ++j) {
            a(pr, j) *= ip;
            inv(pr, j) *= ip;
        }
        for (std::size_t r = 0; r < d; ++r) {
            const std::size_t rr = perm[r];
            if (rr == pr) continue;
            const double f = a(rr, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                a(rr, j) -= f * a(pr, j);
                inv(rr, j) -= f * inv(pr, j);
            }
        }
    }

    // After full elimination a(perm[c], :) = e_c, so inv(perm[c], :) is
    // row c of A^-1.
    Matrix out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = inv(perm[i], j);
    return out;
}

Matrix cholesky_psd(const Matrix& sigma) {
    const std::size_t d = sigma.dim();
    double scale = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(sigma(i, j)));
    const double tol = 1e-10 * std::max(scale, 1.0);

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(sigma(i, j) - sigma(j, i)) > tol)
                throw ConfigError("cholesky_psd: matrix is not symmetric within 1e-10");

    Matrix l(d);
    for (std::size_t j = 0; j < d; ++j) {
        double diag = sigma(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag < -tol) throw ConfigError("cholesky_psd: matrix is not positive semidefinite");
        if (diag <= tol) {
            l(j, j) = 0.0;  // semidefinite direction; column stays zero
            continue;
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double s = sigma(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

}  // namespace kesten
