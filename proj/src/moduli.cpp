#include "delpair/moduli.hpp"

#include <cmath>

namespace delpair {

namespace {

void check_genus(const DeRhamPoint& p, const PeriodMatrix& om) {
    if (p.genus != om.genus())
        throw Error("GenusMismatch", "point has genus " + std::to_string(p.genus) +
                                         ", period matrix has genus " + std::to_string(om.genus()));
}

} // namespace

DeRhamPoint DeRhamPoint::make(cvec t, cvec s) {
    if (t.size() != s.size()) throw Error("GenusMismatch", "t and s of different length");
    for (cplx v : t)
        if (!is_finite(v)) throw Error("InvalidArgument", "non-finite t");
    for (cplx v : s)
        if (!is_finite(v)) throw Error("InvalidArgument", "non-finite s");
    DeRhamPoint p;
    p.genus = static_cast<int>(t.size());
    p.t = std::move(t);
    p.s = std::move(s);
    return p;
}

double DeRhamPoint::unitary_defect() const {
    double d = 0.0;
    for (int i = 0; i < genus; ++i) d = std::max(d, std::abs(t[i] + std::conj(s[i])));
    return d;
}

BettiCharacter BettiCharacter::normalize() const {
    BettiCharacter out = *this;
    for (int j = 0; j < genus; ++j) {
        out.a[j] -= std::floor(out.a[j].real());
        out.b[j] -= std::floor(out.b[j].real());
    }
    out.normalized = true;
    return out;
}

BettiCharacter betti_of_deRham(const DeRhamPoint& p, const PeriodMatrix& om) {
    check_genus(p, om);
    const int g = p.genus;
    BettiCharacter ch;
    ch.genus = g;
    ch.a.resize(g);
    ch.b.resize(g);
    for (int j = 0; j < g; ++j) {
        ch.a[j] = (p.t[j] + p.s[j]) / kTwoPiI;
        cplx bj{0, 0};
        for (int k = 0; k < g; ++k)
            bj += p.t[k] * om.omega()(k, j) + p.s[k] * std::conj(om.omega()(k, j));
        ch.b[j] = bj / kTwoPiI;
    }
    return ch;
}

BettiCharacter unitary_betti(const DeRhamPoint& p, const PeriodMatrix& om) {
    check_genus(p, om);
    const int g = p.genus;
    BettiCharacter ch;
    ch.genus = g;
    ch.a.resize(g);
    ch.b.resize(g);
    for (int j = 0; j < g; ++j) {
        ch.a[j] = (p.s[j] - std::conj(p.s[j])) / kTwoPiI;
        cplx bj{0, 0};
        for (int k = 0; k < g; ++k)
            bj += p.s[k] * std::conj(om.omega()(k, j)) - std::conj(p.s[k]) * om.omega()(k, j);
        ch.b[j] = bj / kTwoPiI;
    }
    return ch;
}

JacobianPoint reduce_mod_lattice(const cvec& u, const PeriodMatrix& om) {
    const int g = om.genus();
    if (static_cast<int>(u.size()) != g) throw Error("GenusMismatch", "reduce_mod_lattice");
    // solve u = x + Omega y with x, y real
    rvec im(g);
    for (int i = 0; i < g; ++i) im[i] = u[i].imag();
    rvec y = cholesky_solve(om.imag_cholesky(), im);
    RealMat re_om = om.omega().real();
    rvec re_off = re_om * y;
    JacobianPoint jp;
    jp.genus = g;
    jp.u.resize(g);
    jp.m.resize(g);
    jp.n.resize(g);
    rvec xf(g), yf(g);
    for (int i = 0; i < g; ++i) {
        double x = u[i].real() - re_off[i];
        jp.m[i] = static_cast<int>(std::floor(x));
        jp.n[i] = static_cast<int>(std::floor(y[i]));
        xf[i] = x - jp.m[i];
        yf[i] = y[i] - jp.n[i];
    }
    for (int i = 0; i < g; ++i) {
        cplx v = xf[i];
        for (int k = 0; k < g; ++k) v += om.omega()(i, k) * yf[k];
        jp.u[i] = v;
    }
    return jp;
}

double lattice_distance(const cvec& u1, const cvec& u2, const PeriodMatrix& om) {
    const int g = om.genus();
    cvec d(g);
    for (int i = 0; i < g; ++i) d[i] = u1[i] - u2[i];
    rvec im(g);
    for (int i = 0; i < g; ++i) im[i] = d[i].imag();
    rvec y = cholesky_solve(om.imag_cholesky(), im);
    RealMat re_om = om.omega().real();
    rvec re_off = re_om * y;
    rvec xr(g), yr(g);
    for (int i = 0; i < g; ++i) {
        double x = d[i].real() - re_off[i];
        xr[i] = x - std::round(x);
        yr[i] = y[i] - std::round(y[i]);
    }
    double dist = 0.0;
    for (int i = 0; i < g; ++i) {
        cplx v = xr[i];
        for (int k = 0; k < g; ++k) v += om.omega()(i, k) * yr[k];
        dist = std::max(dist, std::abs(v));
    }
    return dist;
}

JacobianPoint jacobian_of_deRham(const DeRhamPoint& p, const PeriodMatrix& om) {
    check_genus(p, om);
    const int g = p.genus;
    cvec u(g, cplx{0, 0});
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) u[j] += -(1.0 / kPi) * p.s[k] * om.imag()(k, j);
    return reduce_mod_lattice(u, om);
}

DeRhamPoint unitary_section(const cvec& u, const PeriodMatrix& om) {
    const int g = om.genus();
    if (static_cast<int>(u.size()) != g) throw Error("GenusMismatch", "unitary_section");
    cvec s(g, cplx{0, 0});
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) s[j] += -kPi * u[k] * om.imag_inverse()(k, j);
    cvec t(g);
    for (int j = 0; j < g; ++j) t[j] = -std::conj(s[j]);
    return DeRhamPoint::make(std::move(t), std::move(s));
}

GaussManinInvariant gm_invariant(int genus) {
    if (genus < 1) throw Error("GenusMismatch", "genus must be >= 1");
    return GaussManinInvariant::universal(genus);
}

FormExpr trace_curvature_at(const PeriodMatrix& om, const GaussManinInvariant& nu_l,
                            const DeRhamPoint& nu_m_point) {
    check_genus(nu_m_point, om);
    // The antiholomorphic variation of the family through any point of the atlas
    // is the universal one; the trace formula sees only that part.
    return trace_curvature(om, nu_l, GaussManinInvariant::universal(om.genus()));
}

double jacobian_cross_check(const DeRhamPoint& p, const PeriodMatrix& om) {
    const int g = p.genus;
    JacobianPoint direct = jacobian_of_deRham(p, om);
    BettiCharacter ch = unitary_betti(p, om);
    cvec via_char(g);
    for (int j = 0; j < g; ++j) {
        cplx v = ch.b[j];
        for (int k = 0; k < g; ++k) v -= ch.a[k] * om.omega()(k, j);
        via_char[j] = v;
    }
    return lattice_distance(direct.u, via_char, om);
}

} // namespace delpair
