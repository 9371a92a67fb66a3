#ifndef DELPAIR_SURFACE_HPP
#define DELPAIR_SURFACE_HPP

#include "delpair/moduli.hpp"
#include "delpair/theta.hpp"

#include <algorithm>
#include <functional>

namespace delpair {

// Genus-1 model of the trivial family X x M_dR(X): X = C / (Z + tau Z) with a
// base point sigma, homology basis alpha = [0,1], beta = [0,tau], and
// normalized differential dz. All divisor data lives on the universal cover;
// path integrals between recorded lifts are taken along straight segments.
class EllipticSurface {
public:
    static EllipticSurface make(cplx tau);
    static EllipticSurface make(cplx tau, cplx sigma);

    cplx tau() const { return tau_; }
    cplx sigma() const { return sigma_; }
    const PeriodMatrix& period() const { return pm_; }
    cplx odd_theta_deriv0() const { return theta1_deriv0_; } // prime-form normalizer

    // log-scaled theta[1/2,1/2](z, tau) and its logarithmic z-derivative
    LogScaled odd_theta(cplx z) const;
    cplx odd_theta_dlog(cplx z) const;

    // distance from z to the lattice Z + tau Z
    double lattice_distance(cplx z) const;
    // distance between two points on the torus
    double torus_distance(cplx a, cplx b) const;

private:
    cplx tau_;
    cplx sigma_;
    PeriodMatrix pm_;
    cplx theta1_deriv0_;
};

// Divisor of a meromorphic section: lifts p_i, q_i and integers (m, n) with
// sum(p_i - q_i) = u + m + n tau, u the Jacobian lift of the moduli point (t, s).
struct SectionData {
    cvec p;
    cvec q;
    int m = 0;
    int n = 0;
    cplx t{0, 0};
    cplx s{0, 0};

    static SectionData trivial() { return {}; }
};

// Divisor of a meromorphic function: sum(x_i - y_i) = mt + nt tau.
struct FunctionData {
    cvec x;
    cvec y;
    int mt = 0;
    int nt = 0;

    static FunctionData trivial() { return {}; }
};

// Covector over the moduli coordinate differentials at genus 1.
struct ModuliCovector {
    cplx dt{0, 0};
    cplx ds{0, 0};

    double max_abs() const { return std::max(std::abs(dt), std::abs(ds)); }
};

// The Jacobian lift used by the divisor bookkeeping: u = -(Im tau / pi) s.
cplx jacobian_lift(const EllipticSurface& S, cplx s);
// d u / d s for the moving-divisor parametrization.
cplx jacobian_lift_derivative(const EllipticSurface& S);

// Validates the divisor equation to 1e-10 and records the integers.
SectionData make_section(const EllipticSurface& S, cvec p, cvec q, cplx t, cplx s);
// Section with the single moving lift p1 = q1 + u(s) + m + n tau.
SectionData make_moving_section(const EllipticSurface& S, cplx q1, cplx t, cplx s, int m = 0,
                                int n = 0);
FunctionData make_function(const EllipticSurface& S, cvec x, cvec y);

// Prime form E(z, w) = theta[1/2,1/2](w - z, tau) / theta'[1/2,1/2](0, tau).
cplx prime_form(cplx z, cplx w, cplx tau);

// Equivariant meromorphic section
//   l(z) = prod E(z,p_i)/E(z,q_i) * exp{((t+s) - 2 pi i n)(z - sigma)}.
LogScaled section_value_scaled(const EllipticSurface& S, const SectionData& d, cplx z);
cplx section_value(const EllipticSurface& S, const SectionData& d, cplx z);
// d log l / dz; poles of the section excluded.
cplx section_dlog_z(const EllipticSurface& S, const SectionData& d, cplx z);

// f(z) = prod E(z,x_i)/E(z,y_i) * exp{-2 pi i nt (z - sigma)} and d log f / dz.
LogScaled function_value_scaled(const EllipticSurface& S, const FunctionData& d, cplx z);
cplx function_value(const EllipticSurface& S, const FunctionData& d, cplx z);
cplx dlogf(const EllipticSurface& S, const FunctionData& d, cplx z);

// Base components of the extended connection at (z, (t,s)):
//   dt: d_t log l - (z - sigma); ds: d_s log l - conj(z - sigma),
// with the single lift p1 moving along s and all other data frozen.
ModuliCovector connection_form(const EllipticSurface& S, const SectionData& d, cplx z);

// tr_{Div f}(nabla l / l) - tr_{Div l}(df/f); vanishes for admissible data.
ModuliCovector weil_residual(const EllipticSurface& S, const SectionData& sec,
                             const FunctionData& fn);

struct ReciprocityIResult {
    cplx residual;            // LHS - RHS
    cplx period_alpha;        // contour integral of df/f along alpha
    cplx period_beta;         // along beta
    cplx period_alpha_exact;  // -2 pi i nt' from the re-lifted integers
    cplx period_beta_exact;   // +2 pi i mt'
};

// 2 pi i sum ord_p(f) int_sigma^p w  =  int_alpha w int_beta df/f - int_alpha df/f int_beta w,
// with w = dz (use_conjugate = false) or conj(dz). Periods of df/f by contour
// integration, cross-checked against the exact integer data.
ReciprocityIResult reciprocity_I(const EllipticSurface& S, bool use_conjugate,
                                 const FunctionData& fn);

// Second reciprocity law; the residual is meaningful mod 2 pi i Z and returned reduced.
cplx reciprocity_II(const EllipticSurface& S, const FunctionData& f, const FunctionData& g);

struct GmCurvatureReport {
    cplx period_alpha_t; // expected 1
    cplx period_beta_t;  // expected tau
    cplx period_alpha_s; // expected 1
    cplx period_beta_s;  // expected conj(tau)
    double max_residual;
};

// Contract the numeric curvature of the extended connection with the coordinate
// lifts and read off the periods of the resulting fiber classes. Every
// derivative is taken by finite differences of the section evaluator.
GmCurvatureReport gm_from_curvature_check(const EllipticSurface& S, const SectionData& d,
                                          cplx path_base);

// Quadrature along the straight segment a -> b (Gauss-Legendre, fixed order).
cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, int order = 64);

constexpr double kDivisorMinDistance = 1e-6;

} // namespace delpair

#endif
