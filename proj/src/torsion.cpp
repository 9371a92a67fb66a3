#include "delpair/torsion.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>

namespace delpair {

namespace {

PeriodMatrix mirror_period(const PeriodMatrix& om) {
    // -conj(Omega): same imaginary part, mirrored real part
    return PeriodMatrix::validate(-om.omega().conj());
}

cvec scaled_arg(const PeriodMatrix& om, const cvec& v) {
    const int g = om.genus();
    cvec z(g, cplx{0, 0});
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) z[j] += (1.0 / kPi) * om.imag()(j, k) * v[k];
    return z;
}

// complex bilinear (no conjugation) quadratic form v^T Y v
cplx bilinear_quad(const PeriodMatrix& om, const cvec& v) {
    const int g = om.genus();
    cplx q{0, 0};
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) q += v[i] * om.imag()(i, j) * v[j];
    return q;
}

ThetaValue theta_checked(const cvec& z, const PeriodMatrix& om, bool want_grad = false) {
    if (std::sqrt(theta_norm(z, om)) < kThetaDivisorThreshold)
        throw Error("ThetaZeroOnDivisor", "theta argument lies on the theta divisor");
    return theta(z, om, Characteristic::zero(om.genus()), kThetaDefaultTol, want_grad);
}

// d/dv_j log theta((1/pi) Y v, Omega') = (1/pi) sum_i (grad theta / theta)_i Y_ij
cvec theta_term_gradient(const PeriodMatrix& om, const PeriodMatrix& om_eval, const cvec& v) {
    const int g = om.genus();
    ThetaValue tv = theta_checked(scaled_arg(om, v), om_eval, true);
    cvec dlog(g);
    for (int i = 0; i < g; ++i) dlog[i] = (*tv.gradient)[i] / tv.mantissa;
    cvec out(g, cplx{0, 0});
    for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i) out[j] += (1.0 / kPi) * dlog[i] * om.imag()(i, j);
    return out;
}

cplx det(const ComplexMat& m_in) {
    ComplexMat m = m_in;
    const int n = m.n;
    cplx d{1, 0};
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) == 0.0) return {0, 0};
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
            d = -d;
        }
        d *= m(col, col);
        for (int r = col + 1; r < n; ++r) {
            cplx f = m(r, col) / m(col, col);
            for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return d;
}

// LogScaled value of the kappa-twisted torsion (no constant)
LogScaled kappa_value(const TorsionPoint& pt) {
    const PeriodMatrix& om = pt.omega;
    PeriodMatrix mirror = mirror_period(om);
    cvec ts(pt.p.genus);
    for (int i = 0; i < pt.p.genus; ++i) ts[i] = pt.p.t[i] + pt.p.s[i];
    cplx quad = bilinear_quad(om, ts) / (2.0 * kPi);
    LogScaled v = theta_checked(scaled_arg(om, pt.p.s), om).scaled() *
                  theta_checked(scaled_arg(om, pt.p.t), mirror).scaled();
    v.exponent += quad.real();
    v.mantissa *= std::exp(cplx(0.0, quad.imag()));
    return v;
}

LogScaled unitary_x_value(const TorsionPoint& pt) {
    const PeriodMatrix& om = pt.omega;
    cvec d(pt.p.genus);
    for (int i = 0; i < pt.p.genus; ++i) d[i] = pt.p.s[i] - std::conj(pt.p.s[i]);
    cplx quad = bilinear_quad(om, d) / (2.0 * kPi);
    LogScaled th = theta_checked(scaled_arg(om, pt.p.s), om).scaled();
    LogScaled v{std::norm(th.mantissa), 2.0 * th.exponent};
    v.exponent += quad.real();
    return v;
}

LogScaled unitary_xbar_value(const TorsionPoint& pt) {
    const PeriodMatrix& om = pt.omega;
    PeriodMatrix mirror = mirror_period(om);
    cvec d(pt.p.genus);
    for (int i = 0; i < pt.p.genus; ++i) d[i] = pt.p.t[i] - std::conj(pt.p.t[i]);
    cplx quad = bilinear_quad(om, d) / (2.0 * kPi);
    LogScaled th = theta_checked(scaled_arg(om, pt.p.t), mirror).scaled();
    LogScaled v{std::norm(th.mantissa), 2.0 * th.exponent};
    v.exponent += quad.real();
    return v;
}

LogScaled torsion_value(const TorsionPoint& pt, TorsionKind which) {
    switch (which) {
        case TorsionKind::kappa: return kappa_value(pt);
        case TorsionKind::unitary_x: return unitary_x_value(pt);
        default: return unitary_xbar_value(pt);
    }
}

cplx log_ratio(const LogScaled& a, const LogScaled& b) {
    return std::log(a.mantissa / b.mantissa) + (a.exponent - b.exponent);
}

} // namespace

double TorsionCovector::max_abs() const {
    double m = 0.0;
    for (cplx v : dt) m = std::max(m, std::abs(v));
    for (cplx v : ds) m = std::max(m, std::abs(v));
    return m;
}

cplx log_T_kappa(const TorsionPoint& pt) { return kappa_value(pt).log(); }

double log_T_unitary_X(const TorsionPoint& pt) {
    LogScaled v = unitary_x_value(pt);
    return std::log(v.mantissa.real()) + v.exponent;
}

double log_T_unitary_Xbar(const TorsionPoint& pt) {
    LogScaled v = unitary_xbar_value(pt);
    return std::log(v.mantissa.real()) + v.exponent;
}

TorsionCovector dlog_torsion(const TorsionPoint& pt, TorsionKind which, DerivMethod method) {
    const int g = pt.p.genus;
    const PeriodMatrix& om = pt.omega;
    TorsionCovector out;
    out.dt.assign(g, cplx{0, 0});
    out.ds.assign(g, cplx{0, 0});

    if (method == DerivMethod::finite_difference) {
        const double h = 1e-5;
        for (int j = 0; j < g; ++j) {
            auto d_wirt = [&](bool in_t) {
                auto eval = [&](cplx delta) {
                    TorsionPoint q = pt;
                    (in_t ? q.p.t[j] : q.p.s[j]) += delta;
                    return torsion_value(q, which);
                };
                cplx fx = log_ratio(eval(h), eval(-h)) / (2.0 * h);
                cplx fy = log_ratio(eval(cplx(0, h)), eval(cplx(0, -h))) / (2.0 * h);
                return 0.5 * (fx - kI * fy);
            };
            out.dt[j] = d_wirt(true);
            out.ds[j] = d_wirt(false);
        }
        return out;
    }

    PeriodMatrix mirror = mirror_period(om);
    switch (which) {
        case TorsionKind::kappa: {
            cvec ts(g);
            for (int i = 0; i < g; ++i) ts[i] = pt.p.t[i] + pt.p.s[i];
            cvec grad_s = theta_term_gradient(om, om, pt.p.s);
            cvec grad_t = theta_term_gradient(om, mirror, pt.p.t);
            for (int j = 0; j < g; ++j) {
                cplx quad{0, 0};
                for (int i = 0; i < g; ++i) quad += om.imag()(i, j) * ts[i];
                quad /= kPi;
                out.dt[j] = quad + grad_t[j];
                out.ds[j] = quad + grad_s[j];
            }
            break;
        }
        case TorsionKind::unitary_x: {
            cvec grad_s = theta_term_gradient(om, om, pt.p.s);
            for (int j = 0; j < g; ++j) {
                cplx quad{0, 0};
                for (int i = 0; i < g; ++i)
                    quad += om.imag()(i, j) * (pt.p.s[i] - std::conj(pt.p.s[i]));
                out.ds[j] = quad / kPi + grad_s[j];
            }
            break;
        }
        case TorsionKind::unitary_xbar: {
            cvec grad_t = theta_term_gradient(om, mirror, pt.p.t);
            for (int j = 0; j < g; ++j) {
                cplx quad{0, 0};
                for (int i = 0; i < g; ++i)
                    quad += om.imag()(i, j) * (pt.p.t[i] - std::conj(pt.p.t[i]));
                out.dt[j] = quad / kPi + grad_t[j];
            }
            break;
        }
    }
    return out;
}

namespace {

// Unitary log-torsion derivative through the norm-and-Jacobian route:
//   d/dv_j log ||theta||^2 (u(v), Omega') = -(u - conj u)_j
//       - (1/pi) sum_i (grad theta / theta)_i (u, Omega') Y_ij,  u = -(1/pi) Y v.
// Shares no theta evaluation with the direct coordinate formulas: the theta
// argument has the opposite sign and the prefactor runs through Y^{-1}.
cvec unitary_dlog_norm_route(const PeriodMatrix& om, const PeriodMatrix& om_eval, const cvec& v) {
    const int g = om.genus();
    cvec u(g, cplx{0, 0});
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) u[j] += -(1.0 / kPi) * om.imag()(j, k) * v[k];
    ThetaValue tv = theta_checked(u, om_eval, true);
    cvec dlog(g);
    for (int i = 0; i < g; ++i) dlog[i] = (*tv.gradient)[i] / tv.mantissa;
    cvec out(g);
    for (int j = 0; j < g; ++j) {
        cplx acc = -(u[j] - std::conj(u[j]));
        for (int i = 0; i < g; ++i) acc -= (1.0 / kPi) * dlog[i] * om.imag()(i, j);
        out[j] = acc;
    }
    return out;
}

} // namespace

double flatness_residual_raw(const TorsionPoint& pt) {
    const PeriodMatrix& om = pt.omega;
    PeriodMatrix mirror = mirror_period(om);
    TorsionCovector k = dlog_torsion(pt, TorsionKind::kappa, DerivMethod::analytic);
    cvec x_ds = unitary_dlog_norm_route(om, om, pt.p.s);
    cvec xb_dt = unitary_dlog_norm_route(om, mirror, pt.p.t);
    double m = 0.0;
    for (int j = 0; j < pt.p.genus; ++j) {
        m = std::max(m, std::abs(k.dt[j] - xb_dt[j]));
        m = std::max(m, std::abs(k.ds[j] - x_ds[j]));
    }
    return m;
}

double flatness_residual(const TorsionPoint& pt) {
    if (pt.p.unitary_defect() > 1e-12)
        throw Error("InvalidArgument", "point is off the unitary locus t = -conj(s)");
    return flatness_residual_raw(pt);
}

LogScaled holo_torsion_ab(const cvec& a, const cvec& b, const PeriodMatrix& om) {
    const int g = om.genus();
    if (static_cast<int>(a.size()) != g || static_cast<int>(b.size()) != g)
        throw Error("GenusMismatch", "holo_torsion_ab");
    PeriodMatrix mirror = mirror_period(om);
    cvec arg1(g), arg2(g);
    for (int j = 0; j < g; ++j) {
        cplx s1 = b[j], s2 = b[j];
        for (int k = 0; k < g; ++k) {
            s1 -= a[k] * om.omega()(k, j);
            s2 -= a[k] * std::conj(om.omega()(k, j));
        }
        arg1[j] = s1;
        arg2[j] = s2;
    }
    cplx quad = -2.0 * kPi * bilinear_quad(om, a);
    LogScaled v = theta(arg1, om, Characteristic::zero(g)).scaled() *
                  theta(arg2, mirror, Characteristic::zero(g)).scaled();
    v.exponent += quad.real();
    v.mantissa *= std::exp(cplx(0.0, quad.imag()));
    return v;
}

LogScaled general_torsion_from_prym(const PrymData& pd, const cvec& a, const cvec& b,
                                    const PeriodMatrix& om) {
    const int g = om.genus();
    if (g < 2) throw Error("GenusMismatch", "supplied-data torsion needs genus >= 2");
    if (pd.prym_at_p.n != g - 1 || pd.prym_conj_at_p.n != g - 1 || pd.pairing.n != g - 1 ||
        pd.omega_at_p.n != g || static_cast<int>(pd.u0.size()) != g ||
        static_cast<int>(pd.omega_at_pg.size()) != g)
        throw Error("GenusMismatch", "supplied data has inconsistent dimensions");

    cplx det_eta = det(pd.prym_at_p);
    cplx det_eta_conj = det(pd.prym_conj_at_p);
    double scale = 0.0;
    for (const cplx& v : pd.prym_at_p.a) scale = std::max(scale, std::abs(v));
    for (const cplx& v : pd.prym_conj_at_p.a) scale = std::max(scale, std::abs(v));
    double floor_det = 1e-12 * std::pow(std::max(scale, 1e-30), g - 1);
    if (std::abs(det_eta) < floor_det || std::abs(det_eta_conj) < floor_det)
        throw Error("SingularPrymMatrix", "determinant of supplied differential values vanishes");

    PeriodMatrix mirror = mirror_period(om);
    cvec arg1(g), arg2(g);
    for (int j = 0; j < g; ++j) {
        cplx s1 = b[j] + pd.u0[j], s2 = b[j] - std::conj(pd.u0[j]);
        for (int k = 0; k < g; ++k) {
            s1 -= a[k] * om.omega()(k, j);
            s2 -= a[k] * std::conj(om.omega()(k, j));
        }
        arg1[j] = s1;
        arg2[j] = s2;
    }

    cplx grad_pair{0, 0};
    {
        ThetaValue tv = theta(pd.u0, om, Characteristic::zero(g), kThetaDefaultTol, true);
        cvec gr = tv.gradient_value();
        for (int i = 0; i < g; ++i) grad_pair += gr[i] * pd.omega_at_pg[i];
    }
    if (std::abs(grad_pair) == 0.0)
        throw Error("SingularPrymMatrix", "vanishing theta-gradient pairing at u0");

    cplx exp_arg{0, 0};
    for (int i = 0; i < g; ++i) exp_arg += 4.0 * kPi * pd.u0[i].imag() * a[i];
    exp_arg -= 2.0 * kPi * bilinear_quad(om, a);

    cplx det_omega = det(pd.omega_at_p);

    LogScaled v = theta(arg1, om, Characteristic::zero(g)).scaled() *
                  theta(arg2, mirror, Characteristic::zero(g)).scaled();
    v.mantissa *= 4.0 * kPi * kPi * std::norm(det_omega) * det(pd.pairing) /
                  (det_eta * det_eta_conj * std::norm(grad_pair));
    v.exponent += exp_arg.real();
    v.mantissa *= std::exp(cplx(0.0, exp_arg.imag()));
    return v;
}

// --------------------------------------------------------------- spectral oracle

namespace {

struct TwistedSpectrum {
    cplx tau;
    double a, b; // character exponents of the kappa-twisted bundle
    double c;    // eigenvalue scale 4 pi^2 / (Im tau)^2

    double lambda_min() const {
        double best = std::numeric_limits<double>::infinity();
        for (int m = -2; m <= 2; ++m)
            for (int n = -2; n <= 2; ++n) {
                double v = std::norm((n + frac_center_b()) - (m + frac_center_a()) * tau);
                best = std::min(best, v);
            }
        return c * best;
    }

    double frac_center_a() const { return a - std::round(a); }
    double frac_center_b() const { return b - std::round(b); }

    // heat trace by the direct eigenvalue sum; accurate for t >= O(1)
    double direct(double t, double cutoff) const {
        double aa = frac_center_a(), bb = frac_center_b();
        int R = 2;
        while (c * std::pow(std::max(0.0, (R - 1.0) * std::min(1.0, tau.imag())), 2) * t < cutoff &&
               R < 4000)
            ++R;
        double sum = 0.0;
        for (int m = -R; m <= R; ++m)
            for (int n = -R; n <= R; ++n) {
                double lam = c * std::norm((n + bb) - (m + aa) * tau);
                double e = lam * t;
                if (e < cutoff) sum += std::exp(-e);
            }
        return sum;
    }

    // heat trace by Poisson summation; accurate for t <= O(1)
    double poisson(double t, double cutoff) const {
        double aa = frac_center_a(), bb = frac_center_b();
        cplx w0 = bb - aa * tau;
        double pref = kPi / (c * t * tau.imag());
        double quad_scale = kPi * kPi / (c * t);
        int R = 1;
        double min_dual = 1.0 / std::max(1.0, std::abs(tau)); // crude lower bound on |xi|
        while (quad_scale * std::pow((R - 1.0) * min_dual / tau.imag(), 2) < cutoff && R < 4000)
            ++R;
        double sum = 0.0;
        for (int j = -R; j <= R; ++j)
            for (int k = -R; k <= R; ++k) {
                cplx xi = kI * (static_cast<double>(k) - static_cast<double>(j) * tau) / tau.imag();
                double e = quad_scale * std::norm(xi);
                if (e >= cutoff) continue;
                double phase = 2.0 * kPi * (xi * std::conj(w0)).real();
                sum += std::exp(-e) * std::cos(phase);
            }
        return pref * sum;
    }
};

} // namespace

double spectral_log_det_genus1(cplx u, cplx tau, const SpectralConfig& cfg) {
    PeriodMatrix pm = PeriodMatrix::from_tau(tau); // validates Im tau
    (void)pm;

    // character of u: u = b - a tau with a, b real
    double a = -u.imag() / tau.imag();
    double b = (u + a * tau).real();
    // odd half-period twist
    TwistedSpectrum spec;
    spec.tau = tau;
    spec.a = a - 0.5;
    spec.b = b + 0.5;
    spec.c = 4.0 * kPi * kPi / (tau.imag() * tau.imag());

    double da = spec.a - std::round(spec.a);
    double db = spec.b - std::round(spec.b);
    if (std::abs(da) < 1e-9 && std::abs(db) < 1e-9)
        throw Error("TrivialCharacter", "twisted character has a zero mode");

    const double leading = tau.imag() / (4.0 * kPi);

    // Gauss-Legendre nodes on [0,1]
    const int n = cfg.quad_nodes;
    rvec nodes(n), weights(n);
    {
        // reuse the surface quadrature through a local computation
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = 0.5 * (1.0 - x);
            weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    // small-time segment: int_{-X}^{0} [Theta(e^x) - leading e^{-x}] dx, Poisson form
    const double X = 14.0;
    rvec small_vals(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        double x = -X + nodes[i] * X;
        double t = std::exp(x);
        small_vals[i] = spec.poisson(t, cfg.heat_cutoff) - leading / t;
    }
    double small_part = 0.0;
    for (int i = 0; i < n; ++i) small_part += small_vals[i] * weights[i];
    small_part *= X;

    // large-time segment: int_0^{Y} Theta(e^y) dy, direct eigenvalue sum
    const double Y = std::log(std::max(2.0, cfg.heat_cutoff / spec.lambda_min()));
    rvec large_vals(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        double y = nodes[i] * Y;
        double t = std::exp(y);
        large_vals[i] = spec.direct(t, cfg.heat_cutoff);
    }
    double large_part = 0.0;
    for (int i = 0; i < n; ++i) large_part += large_vals[i] * weights[i];
    large_part *= Y;

    double zeta_prime_0 = -leading + small_part + large_part;
    return -zeta_prime_0;
}

} // namespace delpair
