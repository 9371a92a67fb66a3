#ifndef DELPAIR_TORSION_HPP
#define DELPAIR_TORSION_HPP

#include "delpair/moduli.hpp"
#include "delpair/theta.hpp"

namespace delpair {

// Moduli point for torsion evaluation. All torsion values are log-values
// relative to an unknown metric constant; only derivatives and differences
// are ever compared.
struct TorsionPoint {
    PeriodMatrix omega;
    DeRhamPoint p;
};

struct TorsionCovector {
    cvec dt;
    cvec ds;

    double max_abs() const;
};

enum class TorsionKind { kappa, unitary_x, unitary_xbar };
enum class DerivMethod { analytic, finite_difference };

// log T of the twisted-kappa torsion in moduli coordinates (additive constant dropped):
//   (1/2pi)(t+s)^T Y (t+s) + log theta((1/pi) Y s, Omega) + log theta((1/pi) Y t, -conj(Omega)).
// Throws Error("ThetaZeroOnDivisor") when either theta argument hits the divisor.
cplx log_T_kappa(const TorsionPoint& pt);

// Real unitary logs: (1/2pi)(s-conj s)^T Y (s-conj s) + log |theta|^2((1/pi) Y s, Omega),
// and the t-version over -conj(Omega).
double log_T_unitary_X(const TorsionPoint& pt);
double log_T_unitary_Xbar(const TorsionPoint& pt);

// (1,0)-Wirtinger derivative covector of the chosen log-torsion.
TorsionCovector dlog_torsion(const TorsionPoint& pt, TorsionKind which, DerivMethod method);

// Max component of d log T_kappa - d log T_X - d log T_Xbar. The strict variant
// requires t = -conj(s) to 1e-12; the raw variant evaluates anywhere (used for
// off-locus witnesses).
double flatness_residual(const TorsionPoint& pt);
double flatness_residual_raw(const TorsionPoint& pt);

// exp(-2 pi a^T Y a) theta(b - a^T Omega, Omega) theta(b - a^T conj(Omega), -conj(Omega)),
// relative to the same unknown constant.
LogScaled holo_torsion_ab(const cvec& a, const cvec& b, const PeriodMatrix& om);

// Supplied multiplicative-differential data for the genus >= 2 torsion formula.
// The artifact evaluates the formula; it does not construct the differentials.
struct PrymData {
    cvec u0;                   // g entries
    ComplexMat omega_at_p;     // g x g, normalized differentials at p_1..p_g
    ComplexMat prym_at_p;      // (g-1) x (g-1), eta_i(p_j) for the character
    ComplexMat prym_conj_at_p; // (g-1) x (g-1), eta_i at the mirror points for the inverse
    ComplexMat pairing;        // (g-1) x (g-1), (eta_i, eta_j)
    cvec omega_at_pg;          // g entries, differentials at the last point
};

// Verbatim evaluation of the supplied-data torsion formula; relative to constants.
// Throws Error("SingularPrymMatrix") when a denominator determinant vanishes.
LogScaled general_torsion_from_prym(const PrymData& pd, const cvec& a, const cvec& b,
                                    const PeriodMatrix& om);

struct SpectralConfig {
    int quad_nodes = 160;   // Gauss-Legendre nodes per Mellin segment
    double heat_cutoff = 40.0; // truncation of exponentially small terms
};

// Zeta-regularized log-determinant of the character-twisted flat-torus
// Laplacian at genus 1 (the kappa twist is the odd half-period). Independent
// spectral oracle: eigenvalue lattice, Mellin split of the heat trace, Poisson
// summation for small time. Throws Error("TrivialCharacter") on a zero mode.
double spectral_log_det_genus1(cplx u, cplx tau, const SpectralConfig& cfg = {});

constexpr double kThetaDivisorThreshold = 1e-8;

} // namespace delpair

#endif
