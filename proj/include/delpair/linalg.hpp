#ifndef DELPAIR_LINALG_HPP
#define DELPAIR_LINALG_HPP

#include "delpair/common.hpp"

namespace delpair {

// Dense row-major matrices sized for moduli work (g <= 6); no BLAS needed.
struct RealMat {
    int n = 0;
    std::vector<double> a;

    RealMat() = default;
    explicit RealMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static RealMat identity(int n);
    RealMat transpose() const;
    RealMat operator*(const RealMat& o) const;
    rvec operator*(const rvec& v) const;
};

struct ComplexMat {
    int n = 0;
    cvec a;

    ComplexMat() = default;
    explicit ComplexMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, cplx{0, 0}) {}

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    cplx operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    RealMat real() const;
    RealMat imag() const;
    ComplexMat conj() const;
    ComplexMat operator-() const;
    cvec operator*(const cvec& v) const;
};

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Throws Error("NotPositiveDefinite", ...) when a pivot fails.
RealMat cholesky(const RealMat& m);

// Solve L y = b, then L^T x = y.
rvec cholesky_solve(const RealMat& chol_lower, const rvec& b);

// Inverse via the Cholesky factor.
RealMat cholesky_inverse(const RealMat& chol_lower);

// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi).
double symmetric_min_eigenvalue(const RealMat& m);

double max_abs(const RealMat& m);

} // namespace delpair

#endif
