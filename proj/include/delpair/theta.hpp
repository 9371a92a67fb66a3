#ifndef DELPAIR_THETA_HPP
#define DELPAIR_THETA_HPP

#include "delpair/period.hpp"

#include <optional>

namespace delpair {

// Half-integer characteristics are the hot path; arbitrary real entries in [0,1) accepted.
struct Characteristic {
    rvec alpha;
    rvec beta;

    static Characteristic zero(int g) { return {rvec(g, 0.0), rvec(g, 0.0)}; }
    static Characteristic half(int g) { return {rvec(g, 0.5), rvec(g, 0.5)}; }
};

// theta value as mantissa * exp(exponent); |mantissa| in [0.1, 10] unless zero.
// tail_bound certifies |true - returned| <= tail_bound * exp(exponent).
struct ThetaValue {
    cplx mantissa{0.0, 0.0};
    double exponent = 0.0;
    double tail_bound = 0.0;
    std::optional<cvec> gradient; // same scaling as mantissa

    cplx value() const { return mantissa * std::exp(exponent); }
    cvec gradient_value() const;
    LogScaled scaled() const { return {mantissa, exponent}; }
};

constexpr double kThetaDefaultTol = 1e-13;
constexpr double kThetaMaxRadius = 200.0;

// Riemann theta with characteristics,
//   theta[a,b](Z, Omega) = sum_n exp(pi i (n+a)^T Omega (n+a) + 2 pi i (n+a)^T (Z+b)).
// Lattice truncated to the ellipsoid ||L^T (n - c)|| <= R with certified Gaussian tail.
// Throws Error("TruncationRadiusOverflow") if R would exceed kThetaMaxRadius.
ThetaValue theta(const cvec& z, const PeriodMatrix& om, const Characteristic& ch,
                 double tol = kThetaDefaultTol, bool want_gradient = false);

// Gradient d theta / d Z_k, log-scaled like ThetaValue.
ThetaValue theta_grad(const cvec& z, const PeriodMatrix& om, const Characteristic& ch,
                      double tol = kThetaDefaultTol);

// || theta ||^2 (u, Omega) = exp(-2 pi Im u^T (Im Omega)^-1 Im u) |theta(u, Omega)|^2.
// Invariant under u -> u + m + Omega n.
double theta_norm(const cvec& u, const PeriodMatrix& om, double tol = kThetaDefaultTol);

// Batch evaluation over many points. The serial routine is the reference
// implementation; the parallel one distributes points across OpenMP threads
// and produces bit-identical results.
std::vector<ThetaValue> theta_batch_serial(const std::vector<cvec>& pts, const PeriodMatrix& om,
                                           const Characteristic& ch, double tol,
                                           bool want_gradient = false);
std::vector<ThetaValue> theta_batch_parallel(const std::vector<cvec>& pts, const PeriodMatrix& om,
                                             const Characteristic& ch, double tol,
                                             bool want_gradient = false);

} // namespace delpair

#endif
