#ifndef DELPAIR_PERIOD_HPP
#define DELPAIR_PERIOD_HPP

#include "delpair/linalg.hpp"

namespace delpair {

// Validated genus-g period matrix: symmetric, Im positive definite.
// Caches Im, its Cholesky factor and inverse for the theta and moduli kernels.
class PeriodMatrix {
public:
    // Throws Error("NotSymmetric") / Error("NotPositiveDefiniteImaginaryPart").
    static PeriodMatrix validate(const ComplexMat& raw);

    int genus() const { return omega_.n; }
    const ComplexMat& omega() const { return omega_; }
    const RealMat& imag() const { return im_; }
    const RealMat& imag_cholesky() const { return chol_; }
    const RealMat& imag_inverse() const { return inv_; }
    // sqrt of the smallest eigenvalue of Im Omega; lower bound on the shortest
    // vector of the lattice L^T Z^g used by the theta tail bound.
    double lattice_min_norm() const { return lattice_min_norm_; }

    // genus-1 convenience
    static PeriodMatrix from_tau(cplx tau);
    cplx tau() const { return omega_(0, 0); }

    // empty placeholder; every usable instance comes from validate()
    PeriodMatrix() = default;

private:
    ComplexMat omega_;
    RealMat im_;
    RealMat chol_;
    RealMat inv_;
    double lattice_min_norm_ = 0.0;
};

constexpr double kSymmetryTol = 1e-12;
constexpr double kMinImagEigenvalue = 1e-3;

} // namespace delpair

#endif
