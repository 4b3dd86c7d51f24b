#ifndef KESTEN_LINALG_HPP
#define KESTEN_LINALG_HPP

#include <cstddef>
#include <vector>

namespace kesten {

using Vec = std::vector<double>;

// Dense square d x d matrix, row-major. Dimensions stay small (the state
// spaces here are a handful of coordinates), so everything below is plain
// O(d^2)/O(d^3) loops with deterministic summation order.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim, double fill = 0.0) : dim_(dim), a_(dim * dim, fill) {}

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    bool all_finite() const;

    Matrix& operator*=(double c);

private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
};

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);

Vec mat_vec(const Matrix& m, const Vec& x);
Matrix mat_mat(const Matrix& m, const Matrix& n);
Matrix transpose(const Matrix& m);

// Allocation-free forms for per-step loops; `out` must not alias an input.
void mat_vec_into(Vec& out, const Matrix& m, const Vec& x);
void mat_mat_into(Matrix& out, const Matrix& m, const Matrix& n);

// Spectral norm sup_{|x|=1} |Mx| via power iteration on M^T M.
// Deterministic multi-start (all-ones, alternating signs, index hash);
// tolerance 1e-12 on the Rayleigh quotient, at most 10^4 iterations.
double operator_norm(const Matrix& m);

// Gaussian elimination with partial pivoting. Throws SingularMatrixError
// when a pivot falls below 1e-12 times the row scale.
Matrix invert(const Matrix& m);

// Cholesky factor L (lower) of a symmetric PSD matrix, tolerant of zero
// eigenvalues. Throws ConfigError if the input is asymmetric or indefinite
// beyond 1e-10 relative.
Matrix cholesky_psd(const Matrix& sigma);

}  // namespace kesten

#endif  // KESTEN_LINALG_HPP
