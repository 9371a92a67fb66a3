#ifndef DELPAIR_TWISTOR_HPP
#define DELPAIR_TWISTOR_HPP

#include "delpair/moduli.hpp"
#include "delpair/surface.hpp"

namespace delpair {

enum class TwistorChart { zero, infinity };

// Chart coordinates (t, s, lambda) on the lambda-connection moduli away from
// the fiber at infinity; the infinity chart runs the same code in mu = 1/lambda.
struct TwistorPoint {
    int genus = 0;
    cvec t;
    cvec s;
    cplx lambda{1, 0};
    TwistorChart chart = TwistorChart::zero;

    static TwistorPoint make(cvec t, cvec s, cplx lambda, TwistorChart chart = TwistorChart::zero);
};

// Coefficients of the lambda-connection for the flat connection at p:
//   (0,1)-part over conj(omega_i): ((lambda+1) s_i + (lambda-1) conj(t_i)) / 2
//   (1,0)-part over omega_i:       ((1+lambda) t_i + (1-lambda) conj(s_i)) / 2
struct LambdaConnection {
    cvec part01; // over conj(omega_i)
    cvec part10; // over omega_i
};

LambdaConnection lambda_connection(const DeRhamPoint& p, cplx lambda);

// Chart map to the deRham coordinates:
//   tau_i = -conj(s_i) + t_i / lambda, sigma_i = s_i + lambda conj(t_i).
// The infinity chart runs the same formula in its own parameter mu = 1/lambda.
// Throws Error("LambdaOnDivisor") at lambda = 0 (or mu = 0 in the infinity chart).
DeRhamPoint twistor_to_deRham(const TwistorPoint& tp);

// Antiholomorphic gluing between the two charts: the parameter maps by
// lambda -> -1/conj(lambda). Domain bookkeeping only: moduli coordinates are
// carried unchanged, the divisor fibers are excluded, and the unit circle is
// preserved. Applying the transition twice returns the original point.
TwistorPoint chart_transition(const TwistorPoint& tp);

// Pull the intersection-curvature 2-form back through the chart map; Laurent
// coefficients in lambda over {dt, ds, dtbar, dsbar, dlambda}.
FormExpr pullback_curvature(const PeriodMatrix& om, const TwistorPoint& tp);

// Holomorphic-symplectic generators:
//   phi1  = (i/2pi) sum Y_ij (dt_i dtbar_j + ds_i dsbar_j)
//   phi23 = (1/pi)  sum Y_ij  ds_i dt_j           (the 2+3i combination)
struct HklrForms {
    FormExpr phi1;
    FormExpr phi23;
};

HklrForms hklr_forms(const PeriodMatrix& om);

// Per-lambda-degree comparison of the fiber restriction of the pulled-back
// curvature against {phi23, 2i phi1, conj(phi23)}.
struct FiberDecomposition {
    cplx ratio_minus;       // degree -1 against phi23
    cplx ratio_zero;        // degree  0 against 2i phi1
    cplx ratio_plus;        // degree +1 against conj(phi23)
    double max_offproportionality; // largest coefficient residual after scaling
    double ratio_spread;    // max pairwise distance of the three ratios
};

FiberDecomposition fiber_decomposition_check(const PeriodMatrix& om, const TwistorPoint& tp);

// Residue 1-form of the pulled-back connection at lambda = 0:
//   -(1/pi) sum Y_ij t_i ds_j.
FormExpr connection_residue(const PeriodMatrix& om, const cvec& t, const cvec& s);

// Numeric lambda -> 0 limit of lambda times the ds-component of the trace of
// the pulled-back universal connection at genus 1, Richardson-extrapolated
// over lambda, lambda/2, lambda/4. Compared against connection_residue.
struct ResidueProbe {
    cplx extrapolated;  // limit of lambda * trace ds-component
    cplx expected;      // -(Im tau / pi) t
    double rel_error;
};

ResidueProbe connection_residue_probe(const EllipticSurface& S, cplx t, cplx s, double lambda0);

} // namespace delpair

#endif
