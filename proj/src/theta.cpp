#include "delpair/theta.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>

namespace delpair {

namespace {

// Upper incomplete gamma for half-integer order a = twice_a / 2.
double upper_gamma_half(int twice_a, double x) {
    if (twice_a == 1) return std::sqrt(kPi) * std::erfc(std::sqrt(x));
    if (twice_a == 2) return std::exp(-x);
    double a = 0.5 * (twice_a - 2);
    return a * upper_gamma_half(twice_a - 2, x) + std::pow(x, a) * std::exp(-x);
}

// Bound on sum_{||v|| >= R} ||v||^p exp(-pi ||v||^2) over a shifted lattice with
// shortest nonzero vector >= rho.
double gaussian_tail(int g, double rho, double R, int p) {
    if (R <= 0.5 * rho) return std::numeric_limits<double>::infinity();
    double x = kPi * (R - 0.5 * rho) * (R - 0.5 * rho);
    double pref = 0.5 * g * std::pow(2.0 / rho, g) * std::pow(kPi, -0.5 * p);
    return pref * upper_gamma_half(g + p, x);
}

struct ThetaSetup {
    rvec center;       // real center c = -alpha - Y^{-1} Im z
    double exponent0;  // pi * (Im z)^T Y^{-1} (Im z)
    double center_norm; // ||c + alpha|| for the gradient tail
};

ThetaSetup make_setup(const cvec& z, const PeriodMatrix& om, const Characteristic& ch) {
    const int g = om.genus();
    rvec y(g);
    for (int i = 0; i < g; ++i) y[i] = z[i].imag();
    rvec yinv = cholesky_solve(om.imag_cholesky(), y);
    ThetaSetup s;
    s.center.resize(g);
    double e0 = 0.0, cn = 0.0;
    for (int i = 0; i < g; ++i) {
        s.center[i] = -ch.alpha[i] - yinv[i];
        e0 += y[i] * yinv[i];
        cn += yinv[i] * yinv[i];
    }
    s.exponent0 = kPi * e0;
    s.center_norm = std::sqrt(cn);
    return s;
}

// Smallest radius whose certified tail (value, and gradient when requested) is < tol.
double pick_radius(int g, double rho, double grad_scale, double tol, bool want_gradient) {
    double R = 0.5 * rho + 0.5;
    while (R <= kThetaMaxRadius) {
        double t = gaussian_tail(g, rho, R, 0);
        if (want_gradient) {
            double t1 = 2.0 * kPi * (gaussian_tail(g, rho, R, 1) / rho + grad_scale * t);
            t = std::max(t, t1);
        }
        if (t < tol) return R;
        R += 0.25;
    }
    throw Error("TruncationRadiusOverflow",
                "required truncation radius exceeds " + std::to_string(kThetaMaxRadius));
}

// Enumerate n in Z^g with ||L^T (n - c)|| <= R, depth-first from the last coordinate.
template <typename F>
void enumerate_ellipsoid(const RealMat& L, const rvec& c, double R, F&& visit) {
    const int g = L.n;
    std::vector<int> n(g, 0);
    rvec shift(g, 0.0); // shift[i] = sum_{j>i} U_ij (n_j - c_j), U = L^T
    double rem = R * R;  // remaining squared radius at current depth

    // recursive lambda over coordinate i
    auto rec = [&](auto&& self, int i, double rem_sq) -> void {
        if (i < 0) {
            visit(n);
            return;
        }
        double uii = L(i, i); // U(i,i) = L(i,i)
        double center = c[i] - shift[i] / uii;
        double halfwidth = std::sqrt(std::max(0.0, rem_sq)) / uii;
        int lo = static_cast<int>(std::ceil(center - halfwidth - 1e-12));
        int hi = static_cast<int>(std::floor(center + halfwidth + 1e-12));
        for (int v = lo; v <= hi; ++v) {
            n[i] = v;
            double form = uii * (v - center);
            double next_rem = rem_sq - form * form;
            if (next_rem < -1e-9) continue;
            if (i > 0) {
                for (int k = 0; k < i; ++k) {
                    // U(k,i) = L(i,k); accumulate contribution of coordinate i to row k
                    shift[k] += L(i, k) * (v - c[i]);
                }
                self(self, i - 1, std::max(0.0, next_rem));
                for (int k = 0; k < i; ++k) shift[k] -= L(i, k) * (v - c[i]);
            } else {
                self(self, -1, next_rem);
            }
        }
    };
    rec(rec, g - 1, rem);
}

ThetaValue theta_impl(const cvec& z, const PeriodMatrix& om, const Characteristic& ch,
                      double tol, bool want_gradient) {
    const int g = om.genus();
    if (static_cast<int>(z.size()) != g)
        throw Error("GenusMismatch", "z has " + std::to_string(z.size()) + " entries, genus is " + std::to_string(g));
    if (!(tol > 0.0)) throw Error("InvalidTolerance", "tol must be positive");
    for (cplx v : z)
        if (!is_finite(v)) throw Error("InvalidArgument", "non-finite z");

    const ThetaSetup setup = make_setup(z, om, ch);
    const double rho = om.lattice_min_norm();
    const double R = pick_radius(g, rho, setup.center_norm + 1.0, tol, want_gradient);

    KahanSum sum;
    std::vector<KahanSum> grad(want_gradient ? g : 0);
    cvec zb(g);
    for (int i = 0; i < g; ++i) zb[i] = z[i] + ch.beta[i];

    enumerate_ellipsoid(om.imag_cholesky(), setup.center, R, [&](const std::vector<int>& n) {
        // exponent pi i (n+a)^T Omega (n+a) + 2 pi i (n+a)^T (z+b), log-shifted by exponent0
        cplx e{0.0, 0.0};
        for (int i = 0; i < g; ++i) {
            double na_i = n[i] + ch.alpha[i];
            cplx row{0.0, 0.0};
            for (int j = 0; j < g; ++j) row += om.omega()(i, j) * (n[j] + ch.alpha[j]);
            e += kPi * kI * na_i * row + 2.0 * kPi * kI * na_i * zb[i];
        }
        cplx term = std::exp(e - setup.exponent0);
        sum.add(term);
        if (want_gradient)
            for (int k = 0; k < g; ++k) grad[k].add(2.0 * kPi * kI * (n[k] + ch.alpha[k]) * term);
    });

    ThetaValue out;
    out.mantissa = sum.sum;
    out.exponent = setup.exponent0;
    out.tail_bound = gaussian_tail(g, rho, R, 0);
    if (want_gradient) {
        out.gradient.emplace(g);
        for (int k = 0; k < g; ++k) (*out.gradient)[k] = grad[k].sum;
    }

    // normalize |mantissa| into [0.1, 10]; sums below the certified tail count
    // as zero and keep the raw scale so a nonzero gradient stays readable
    double m = std::abs(out.mantissa);
    if (m > std::max(out.tail_bound, 1e-15) && (m < 0.1 || m > 10.0)) {
        double k = std::round(std::log(m));
        double scale = std::exp(-k);
        out.mantissa *= scale;
        out.exponent += k;
        out.tail_bound *= scale;
        if (out.gradient)
            for (cplx& gk : *out.gradient) gk *= scale;
    }
    return out;
}

} // namespace

cvec ThetaValue::gradient_value() const {
    if (!gradient) throw Error("InvalidArgument", "gradient was not requested");
    cvec out(gradient->size());
    double s = std::exp(exponent);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*gradient)[i] * s;
    return out;
}

ThetaValue theta(const cvec& z, const PeriodMatrix& om, const Characteristic& ch, double tol,
                 bool want_gradient) {
    return theta_impl(z, om, ch, tol, want_gradient);
}

ThetaValue theta_grad(const cvec& z, const PeriodMatrix& om, const Characteristic& ch, double tol) {
    return theta_impl(z, om, ch, tol, true);
}

double theta_norm(const cvec& u, const PeriodMatrix& om, double tol) {
    const int g = om.genus();
    ThetaValue tv = theta(u, om, Characteristic::zero(g), tol);
    rvec y(g);
    for (int i = 0; i < g; ++i) y[i] = u[i].imag();
    rvec yinv = cholesky_solve(om.imag_cholesky(), y);
    double q = 0.0;
    for (int i = 0; i < g; ++i) q += y[i] * yinv[i];
    double m = std::abs(tv.mantissa);
    return m * m * std::exp(2.0 * (tv.exponent - kPi * q));
}

std::vector<ThetaValue> theta_batch_serial(const std::vector<cvec>& pts, const PeriodMatrix& om,
                                           const Characteristic& ch, double tol, bool want_gradient) {
    std::vector<ThetaValue> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = theta(pts[i], om, ch, tol, want_gradient);
    return out;
}

std::vector<ThetaValue> theta_batch_parallel(const std::vector<cvec>& pts, const PeriodMatrix& om,
                                             const Characteristic& ch, double tol, bool want_gradient) {
    std::vector<ThetaValue> out(pts.size());
    const std::int64_t n = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = theta(pts[i], om, ch, tol, want_gradient);
    return out;
}

} // namespace delpair
