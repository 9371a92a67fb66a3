#include "delpair/surface.hpp"

#include <cmath>
#include <functional>

namespace delpair {

namespace {

double legendre_value_deriv(int n, double x, double& deriv) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    deriv = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
}

// Gauss-Legendre nodes and weights on [0, 1]; stateless, so thread-safe.
void gauss_legendre(int n, rvec& nodes, rvec& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p = legendre_value_deriv(n, x, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_value_deriv(n, x, dp);
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

// lattice coordinates of w in the basis (1, tau)
void lattice_coords(cplx w, cplx tau, double& x, double& y) {
    y = w.imag() / tau.imag();
    x = w.real() - tau.real() * y;
}

struct ReliftedFunction {
    FunctionData data;
    cplx corner;
};

} // namespace

// ------------------------------------------------------------ EllipticSurface

EllipticSurface EllipticSurface::make(cplx tau) { return make(tau, 0.1 + 0.1 * tau); }

EllipticSurface EllipticSurface::make(cplx tau, cplx sigma) {
    EllipticSurface s;
    s.tau_ = tau;
    s.sigma_ = sigma;
    s.pm_ = PeriodMatrix::from_tau(tau); // validates Im tau
    ThetaValue g = theta_grad({cplx{0, 0}}, s.pm_, Characteristic::half(1));
    s.theta1_deriv0_ = g.gradient_value()[0];
    return s;
}

LogScaled EllipticSurface::odd_theta(cplx z) const {
    return theta({z}, pm_, Characteristic::half(1)).scaled();
}

cplx EllipticSurface::odd_theta_dlog(cplx z) const {
    ThetaValue tv = theta({z}, pm_, Characteristic::half(1), kThetaDefaultTol, true);
    if (std::abs(tv.mantissa) == 0.0) throw Error("PoleAtEvaluationPoint", "log-derivative at a theta zero");
    return (*tv.gradient)[0] / tv.mantissa;
}

double EllipticSurface::lattice_distance(cplx z) const {
    double x, y;
    lattice_coords(z, tau_, x, y);
    x -= std::round(x);
    y -= std::round(y);
    double best = std::abs(x + tau_ * y);
    for (int dm = -1; dm <= 1; ++dm)
        for (int dn = -1; dn <= 1; ++dn)
            best = std::min(best, std::abs(x + dm + tau_ * (y + dn)));
    return best;
}

double EllipticSurface::torus_distance(cplx a, cplx b) const { return lattice_distance(a - b); }

// ------------------------------------------------------------------ divisors

cplx jacobian_lift(const EllipticSurface& S, cplx s) { return -(S.tau().imag() / kPi) * s; }

cplx jacobian_lift_derivative(const EllipticSurface& S) { return -(S.tau().imag() / kPi); }

SectionData make_section(const EllipticSurface& S, cvec p, cvec q, cplx t, cplx s) {
    if (p.size() != q.size()) throw Error("InvalidDivisor", "zero and pole counts differ");
    cplx v = -jacobian_lift(S, s);
    for (cplx pi : p) v += pi;
    for (cplx qi : q) v -= qi;
    double y = v.imag() / S.tau().imag();
    int n = static_cast<int>(std::round(y));
    int m = static_cast<int>(std::round((v - static_cast<double>(n) * S.tau()).real()));
    if (std::abs(v - static_cast<double>(m) - static_cast<double>(n) * S.tau()) > 1e-10)
        throw Error("InvalidDivisor", "divisor sum is not u + m + n tau to 1e-10");
    SectionData d;
    d.p = std::move(p);
    d.q = std::move(q);
    d.m = m;
    d.n = n;
    d.t = t;
    d.s = s;
    return d;
}

SectionData make_moving_section(const EllipticSurface& S, cplx q1, cplx t, cplx s, int m, int n) {
    cplx p1 = q1 + jacobian_lift(S, s) + static_cast<double>(m) + static_cast<double>(n) * S.tau();
    return make_section(S, {p1}, {q1}, t, s);
}

FunctionData make_function(const EllipticSurface& S, cvec x, cvec y) {
    if (x.size() != y.size()) throw Error("InvalidDivisor", "zero and pole counts differ");
    cplx v{0, 0};
    for (cplx xi : x) v += xi;
    for (cplx yi : y) v -= yi;
    double yy = v.imag() / S.tau().imag();
    int nt = static_cast<int>(std::round(yy));
    int mt = static_cast<int>(std::round((v - static_cast<double>(nt) * S.tau()).real()));
    if (std::abs(v - static_cast<double>(mt) - static_cast<double>(nt) * S.tau()) > 1e-10)
        throw Error("InvalidDivisor", "divisor sum is not m + n tau to 1e-10");
    FunctionData d;
    d.x = std::move(x);
    d.y = std::move(y);
    d.mt = mt;
    d.nt = nt;
    return d;
}

// ----------------------------------------------------------------- evaluators

cplx prime_form(cplx z, cplx w, cplx tau) {
    PeriodMatrix pm = PeriodMatrix::from_tau(tau);
    cplx num = theta({w - z}, pm, Characteristic::half(1)).value();
    cplx den = theta_grad({cplx{0, 0}}, pm, Characteristic::half(1)).gradient_value()[0];
    return num / den;
}

LogScaled section_value_scaled(const EllipticSurface& S, const SectionData& d, cplx z) {
    LogScaled v{cplx{1, 0}, 0.0};
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        if (S.lattice_distance(d.q[i] - z) < kDivisorMinDistance)
            throw Error("PoleAtEvaluationPoint", "z collides with a pole of the section");
        v = v * S.odd_theta(d.p[i] - z) / S.odd_theta(d.q[i] - z);
    }
    cplx log_factor = ((d.t + d.s) - kTwoPiI * static_cast<double>(d.n)) * (z - S.sigma());
    v.exponent += log_factor.real();
    v.mantissa *= std::exp(cplx(0.0, log_factor.imag()));
    return v;
}

cplx section_value(const EllipticSurface& S, const SectionData& d, cplx z) {
    return section_value_scaled(S, d, z).value();
}

cplx section_dlog_z(const EllipticSurface& S, const SectionData& d, cplx z) {
    cplx v = (d.t + d.s) - kTwoPiI * static_cast<double>(d.n);
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        if (S.lattice_distance(d.p[i] - z) < kDivisorMinDistance ||
            S.lattice_distance(d.q[i] - z) < kDivisorMinDistance)
            throw Error("PoleAtEvaluationPoint", "z collides with the divisor of the section");
        v += -S.odd_theta_dlog(d.p[i] - z) + S.odd_theta_dlog(d.q[i] - z);
    }
    return v;
}

LogScaled function_value_scaled(const EllipticSurface& S, const FunctionData& d, cplx z) {
    LogScaled v{cplx{1, 0}, 0.0};
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        if (S.lattice_distance(d.y[i] - z) < kDivisorMinDistance)
            throw Error("PoleAtEvaluationPoint", "z collides with a pole of the function");
        v = v * S.odd_theta(d.x[i] - z) / S.odd_theta(d.y[i] - z);
    }
    cplx log_factor = -kTwoPiI * static_cast<double>(d.nt) * (z - S.sigma());
    v.exponent += log_factor.real();
    v.mantissa *= std::exp(cplx(0.0, log_factor.imag()));
    return v;
}

cplx function_value(const EllipticSurface& S, const FunctionData& d, cplx z) {
    return function_value_scaled(S, d, z).value();
}

cplx dlogf(const EllipticSurface& S, const FunctionData& d, cplx z) {
    cplx v = -kTwoPiI * static_cast<double>(d.nt);
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        if (S.lattice_distance(d.x[i] - z) < kDivisorMinDistance ||
            S.lattice_distance(d.y[i] - z) < kDivisorMinDistance)
            throw Error("PoleAtEvaluationPoint", "z collides with the divisor of the function");
        v += -S.odd_theta_dlog(d.x[i] - z) + S.odd_theta_dlog(d.y[i] - z);
    }
    return v;
}

// ------------------------------------------------------------ connection form

ModuliCovector connection_form(const EllipticSurface& S, const SectionData& d, cplx z) {
    // d_t log l = (z - sigma) exactly: only the exponential factor carries t.
    ModuliCovector out;
    out.dt = (z - S.sigma()) - (z - S.sigma());
    // d_s log l = (z - sigma) + (theta'/theta)(p1 - z) * du/ds through the moving lift
    cplx ds = (z - S.sigma());
    if (!d.p.empty()) {
        if (S.lattice_distance(d.p[0] - z) < kDivisorMinDistance)
            throw Error("PoleAtEvaluationPoint", "z collides with the moving zero");
        ds += S.odd_theta_dlog(d.p[0] - z) * jacobian_lift_derivative(S);
    }
    out.ds = ds - std::conj(z - S.sigma());
    return out;
}

ModuliCovector weil_residual(const EllipticSurface& S, const SectionData& sec,
                             const FunctionData& fn) {
    if (sec.p.empty()) {
        // trivial section: both traces vanish identically
        ModuliCovector z;
        if (fn.x.empty()) return z;
    }
    // collision checks across all divisor data and the base point
    cvec pts;
    for (cplx v : sec.p) pts.push_back(v);
    for (cplx v : sec.q) pts.push_back(v);
    for (cplx v : fn.x) pts.push_back(v);
    for (cplx v : fn.y) pts.push_back(v);
    pts.push_back(S.sigma());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (S.torus_distance(pts[i], pts[j]) < kDivisorMinDistance)
                throw Error("DivisorCollision", "divisor points closer than 1e-6 on the torus");

    // left trace: sum over Div f of the connection covector
    ModuliCovector left;
    for (cplx xj : fn.x) {
        ModuliCovector c = connection_form(S, sec, xj);
        left.dt += c.dt;
        left.ds += c.ds;
    }
    for (cplx yj : fn.y) {
        ModuliCovector c = connection_form(S, sec, yj);
        left.dt -= c.dt;
        left.ds -= c.ds;
    }

    // right trace: df/f pulled back through the moving zero of the section
    ModuliCovector right;
    if (!sec.p.empty() && !fn.x.empty())
        right.ds = dlogf(S, fn, sec.p[0]) * jacobian_lift_derivative(S);

    return {left.dt - right.dt, left.ds - right.ds};
}

// ---------------------------------------------------------------- reciprocity

cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, int order) {
    rvec nodes, weights;
    gauss_legendre(order, nodes, weights);
    cplx dz = b - a;
    KahanSum acc;
    for (int i = 0; i < order; ++i) acc.add(f(a + nodes[i] * dz) * weights[i]);
    return acc.sum * dz;
}

// Composite rule for integrands with poles near (but off) the path.
static cplx integrate_segment_panels(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                                     int panels, int order) {
    KahanSum acc;
    cplx step = (b - a) / static_cast<double>(panels);
    for (int k = 0; k < panels; ++k)
        acc.add(integrate_segment(f, a + static_cast<double>(k) * step,
                                  a + static_cast<double>(k + 1) * step, order));
    return acc.sum;
}

namespace {

// Re-lift the function divisor into the parallelogram with the given corner,
// keeping the points away from the edges; nudges the corner when needed.
ReliftedFunction relift_function(const EllipticSurface& S, const FunctionData& fn, cplx corner0) {
    const double margin = 0.03; // fractional distance of divisor points to the contour
    cplx corner = corner0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        bool ok = true;
        cvec nx, ny;
        auto relift = [&](cplx w) {
            double x, y;
            lattice_coords(w - corner, S.tau(), x, y);
            double fx = x - std::floor(x);
            double fy = y - std::floor(y);
            if (fx < margin || fx > 1.0 - margin || fy < margin || fy > 1.0 - margin) ok = false;
            return corner + fx + fy * S.tau();
        };
        for (cplx w : fn.x) nx.push_back(relift(w));
        for (cplx w : fn.y) ny.push_back(relift(w));
        if (ok) return {make_function(S, nx, ny), corner};
        corner += 0.0137 + 0.0091 * S.tau();
    }
    throw Error("DivisorCollision", "could not place the divisor inside a period parallelogram");
}

} // namespace

ReciprocityIResult reciprocity_I(const EllipticSurface& S, bool use_conjugate,
                                 const FunctionData& fn) {
    cplx tau = S.tau();
    ReliftedFunction rf = relift_function(S, fn, S.sigma() - 0.271 - 0.377 * tau);

    auto integrand = [&](cplx z) { return dlogf(S, rf.data, z); };
    cplx pa = integrate_segment_panels(integrand, rf.corner, rf.corner + 1.0, 16, 24);
    cplx pb = integrate_segment_panels(integrand, rf.corner, rf.corner + tau, 16, 24);

    ReciprocityIResult out;
    out.period_alpha = pa;
    out.period_beta = pb;
    out.period_alpha_exact = -kTwoPiI * static_cast<double>(rf.data.nt);
    out.period_beta_exact = kTwoPiI * static_cast<double>(rf.data.mt);

    cplx abel{0, 0}; // sum of ord_p (p - sigma); sigma drops out by degree 0
    for (cplx x : rf.data.x) abel += (x - S.sigma());
    for (cplx y : rf.data.y) abel -= (y - S.sigma());

    cplx lhs, rhs;
    if (!use_conjugate) {
        lhs = kTwoPiI * abel;
        rhs = 1.0 * pb - pa * tau; // int_alpha dz = 1, int_beta dz = tau
    } else {
        lhs = kTwoPiI * std::conj(abel);
        rhs = 1.0 * pb - pa * std::conj(tau);
    }
    out.residual = lhs - rhs;
    return out;
}

cplx reciprocity_II(const EllipticSurface& S, const FunctionData& f, const FunctionData& g) {
    // both divisors must sit in one parallelogram: pool the points for the corner search
    FunctionData pooled;
    pooled.x = f.x;
    pooled.y = f.y;
    for (cplx w : g.x) {
        pooled.x.push_back(w);
        pooled.y.push_back(w); // keeps the lattice equation trivially satisfied
    }
    for (cplx w : g.y) {
        pooled.x.push_back(w);
        pooled.y.push_back(w);
    }
    cplx corner =
        relift_function(S, pooled, S.sigma() - cplx(0.271, 0) - 0.377 * S.tau()).corner;
    FunctionData ff = relift_function(S, f, corner).data;
    FunctionData gg = relift_function(S, g, corner).data;

    // disjointness
    for (cplx a : ff.x)
        for (cplx b : gg.x)
            if (S.torus_distance(a, b) < kDivisorMinDistance)
                throw Error("DivisorCollision", "divisors of f and g intersect");
    for (cplx a : ff.y)
        for (cplx b : gg.y)
            if (S.torus_distance(a, b) < kDivisorMinDistance)
                throw Error("DivisorCollision", "divisors of f and g intersect");

    cplx lhs{0, 0};
    for (cplx q : gg.x) lhs += function_value_scaled(S, ff, q).log();
    for (cplx q : gg.y) lhs -= function_value_scaled(S, ff, q).log();
    for (cplx p : ff.x) lhs -= function_value_scaled(S, gg, p).log();
    for (cplx p : ff.y) lhs += function_value_scaled(S, gg, p).log();

    // (1/2 pi i)(P_alpha(f) P_beta(g) - P_alpha(g) P_beta(f)) from the exact integers
    cplx rhs = kTwoPiI * static_cast<double>(gg.nt * ff.mt - ff.nt * gg.mt);

    cplx r = lhs - rhs;
    // the statement is well-defined mod 2 pi i Z
    r -= kTwoPiI * std::round(r.imag() / (2.0 * kPi));
    return r;
}

// ----------------------------------------------------- curvature-to-GM checks

namespace {

struct SectionField {
    const EllipticSurface& S;
    SectionData base;

    SectionData at(cplx t, cplx s) const {
        SectionData d = base;
        d.t = t;
        d.s = s;
        if (!d.p.empty()) d.p[0] += jacobian_lift(S, s) - jacobian_lift(S, base.s);
        return d;
    }

    LogScaled value(cplx z, cplx t, cplx s) const { return section_value_scaled(S, at(t, s), z); }
    cplx dlog_z(cplx z, cplx t, cplx s) const { return section_dlog_z(S, at(t, s), z); }
};

// principal log of a ratio of log-scaled values; safe for nearby arguments
cplx log_ratio(const LogScaled& a, const LogScaled& b) {
    return std::log(a.mantissa / b.mantissa) + (a.exponent - b.exponent);
}

} // namespace

GmCurvatureReport gm_from_curvature_check(const EllipticSurface& S, const SectionData& d,
                                          cplx path_base) {
    const SectionField field{S, d};
    const cplx t0 = d.t, s0 = d.s;
    const double ht = 1e-5;

    // A_t and A_s as fields of (z): moduli log-derivatives by central log-ratios
    auto At = [&](cplx z) {
        cplx dt = log_ratio(field.value(z, t0 + ht, s0), field.value(z, t0 - ht, s0)) / (2.0 * ht);
        return dt - (z - S.sigma());
    };
    auto As = [&](cplx z) {
        cplx ds = log_ratio(field.value(z, t0, s0 + ht), field.value(z, t0, s0 - ht)) / (2.0 * ht);
        return ds - std::conj(z - S.sigma());
    };
    // A_zbar as a Wirtinger finite difference of log l at the given moduli point
    auto Azbar = [&](cplx z, cplx t, cplx s) {
        const double h = 1e-4;
        cplx fx = log_ratio(field.value(z + h, t, s), field.value(z - h, t, s)) / (2.0 * h);
        cplx fy = log_ratio(field.value(z + cplx(0, h), t, s), field.value(z - cplx(0, h), t, s)) /
                  (2.0 * h);
        return 0.5 * (fx + kI * fy);
    };

    // Wirtinger derivative of a scalar field with one Richardson step
    auto wirtinger = [&](const std::function<cplx(cplx)>& f, cplx z, double h, bool conj_part) {
        auto d_at = [&](double hh) {
            cplx fx = (f(z + hh) - f(z - hh)) / (2.0 * hh);
            cplx fy = (f(z + cplx(0, hh)) - f(z - cplx(0, hh))) / (2.0 * hh);
            return conj_part ? 0.5 * (fx + kI * fy) : 0.5 * (fx - kI * fy);
        };
        cplx dh = d_at(h), dh2 = d_at(0.5 * h);
        return (4.0 * dh2 - dh) / 3.0;
    };

    const double hz = 4e-4;
    // curvature components contracted with the coordinate lifts:
    //   eta_t = -(F_zt dz + F_zbt dzbar), F_zt = d_z A_t - d_t A_z, ...
    auto eta_t = [&](cplx z) {
        cplx dzAt = wirtinger(At, z, hz, false);
        cplx dzbAt = wirtinger(At, z, hz, true);
        cplx dtAz =
            (field.dlog_z(z, t0 + ht, s0) - field.dlog_z(z, t0 - ht, s0)) / (2.0 * ht);
        cplx dtAzb = (Azbar(z, t0 + ht, s0) - Azbar(z, t0 - ht, s0)) / (2.0 * ht);
        return std::pair<cplx, cplx>{-(dzAt - dtAz), -(dzbAt - dtAzb)};
    };
    auto eta_s = [&](cplx z) {
        cplx dzAs = wirtinger(As, z, hz, false);
        cplx dzbAs = wirtinger(As, z, hz, true);
        cplx dsAz =
            (field.dlog_z(z, t0, s0 + ht) - field.dlog_z(z, t0, s0 - ht)) / (2.0 * ht);
        cplx dsAzb = (Azbar(z, t0, s0 + ht) - Azbar(z, t0, s0 - ht)) / (2.0 * ht);
        return std::pair<cplx, cplx>{-(dzAs - dsAz), -(dzbAs - dsAzb)};
    };

    auto period = [&](const std::function<std::pair<cplx, cplx>(cplx)>& form, cplx dir) {
        // integrate f_z dz + f_zbar dzbar along path_base + x * dir, x in [0,1]
        auto integrand = [&](cplx z) {
            auto [fz, fzb] = form(z);
            return fz * dir + fzb * std::conj(dir);
        };
        cplx acc{0, 0};
        rvec nodes, weights;
        gauss_legendre(32, nodes, weights);
        for (int i = 0; i < 32; ++i) acc += integrand(path_base + nodes[i] * dir) * weights[i];
        return acc;
    };

    GmCurvatureReport rep;
    rep.period_alpha_t = period(eta_t, 1.0);
    rep.period_beta_t = period(eta_t, S.tau());
    rep.period_alpha_s = period(eta_s, 1.0);
    rep.period_beta_s = period(eta_s, S.tau());
    rep.max_residual = std::max({std::abs(rep.period_alpha_t - 1.0),
                                 std::abs(rep.period_beta_t - S.tau()),
                                 std::abs(rep.period_alpha_s - 1.0),
                                 std::abs(rep.period_beta_s - std::conj(S.tau()))});
    return rep;
}

} // namespace delpair
