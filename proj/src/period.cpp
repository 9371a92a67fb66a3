#include "delpair/period.hpp"

#include <cmath>

namespace delpair {

PeriodMatrix PeriodMatrix::validate(const ComplexMat& raw) {
    const int g = raw.n;
    if (g < 1) throw Error("NotPositiveDefiniteImaginaryPart", "empty matrix");
    for (const cplx& z : raw.a)
        if (!is_finite(z)) throw Error("NotPositiveDefiniteImaginaryPart", "non-finite entry");

    double asym = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) asym = std::max(asym, std::abs(raw(i, j) - raw(j, i)));
    if (asym >= kSymmetryTol)
        throw Error("NotSymmetric", "max |Omega_ij - Omega_ji| = " + std::to_string(asym));

    PeriodMatrix pm;
    pm.omega_ = ComplexMat(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) pm.omega_(i, j) = 0.5 * (raw(i, j) + raw(j, i));

    pm.im_ = pm.omega_.imag();
    double min_eig = symmetric_min_eigenvalue(pm.im_);
    if (!(min_eig > kMinImagEigenvalue))
        throw Error("NotPositiveDefiniteImaginaryPart",
                    "smallest eigenvalue of Im Omega is " + std::to_string(min_eig) +
                        ", need > " + std::to_string(kMinImagEigenvalue));
    try {
        pm.chol_ = cholesky(pm.im_);
    } catch (const Error&) {
        throw Error("NotPositiveDefiniteImaginaryPart", "Cholesky factorization failed");
    }
    pm.inv_ = cholesky_inverse(pm.chol_);
    pm.lattice_min_norm_ = std::sqrt(min_eig);
    return pm;
}

PeriodMatrix PeriodMatrix::from_tau(cplx tau) {
    ComplexMat m(1);
    m(0, 0) = tau;
    return validate(m);
}

} // namespace delpair
