#include "delpair/twistor.hpp"

#include <cmath>

namespace delpair {

TwistorPoint TwistorPoint::make(cvec t, cvec s, cplx lambda, TwistorChart chart) {
    if (t.size() != s.size()) throw Error("GenusMismatch", "t and s of different length");
    if (!is_finite(lambda)) throw Error("InvalidArgument", "non-finite lambda");
    TwistorPoint tp;
    tp.genus = static_cast<int>(t.size());
    tp.t = std::move(t);
    tp.s = std::move(s);
    tp.lambda = lambda;
    tp.chart = chart;
    return tp;
}

LambdaConnection lambda_connection(const DeRhamPoint& p, cplx lambda) {
    const int g = p.genus;
    LambdaConnection c;
    c.part01.resize(g);
    c.part10.resize(g);
    for (int i = 0; i < g; ++i) {
        c.part01[i] = 0.5 * ((lambda + 1.0) * p.s[i] + (lambda - 1.0) * std::conj(p.t[i]));
        c.part10[i] = 0.5 * ((1.0 + lambda) * p.t[i] + (1.0 - lambda) * std::conj(p.s[i]));
    }
    return c;
}

DeRhamPoint twistor_to_deRham(const TwistorPoint& tp) {
    if (std::abs(tp.lambda) == 0.0)
        throw Error("LambdaOnDivisor", "the chart map degenerates at the divisor fiber");
    const int g = tp.genus;
    cvec tau_c(g), sigma_c(g);
    for (int i = 0; i < g; ++i) {
        tau_c[i] = -std::conj(tp.s[i]) + tp.t[i] / tp.lambda;
        sigma_c[i] = tp.s[i] + tp.lambda * std::conj(tp.t[i]);
    }
    return DeRhamPoint::make(std::move(tau_c), std::move(sigma_c));
}

FormExpr pullback_curvature(const PeriodMatrix& om, const TwistorPoint& tp) {
    if (std::abs(tp.lambda) == 0.0)
        throw Error("LambdaOnDivisor", "the pullback degenerates at the divisor fiber");
    const int g = om.genus();
    if (tp.genus != g) throw Error("GenusMismatch", "pullback_curvature");
    Generators gens{g};

    // dtau_i = dt_i / lambda - dsbar_i - t_i dlambda / lambda^2
    // dsigma_i = ds_i + lambda dtbar_i + tbar_i dlambda
    std::vector<FormExpr> dtau(g, FormExpr::zero(g)), dsigma(g, FormExpr::zero(g));
    for (int i = 0; i < g; ++i) {
        FormExpr f = FormExpr::generator(g, gens.dt(i)) * LaurentPoly::monomial(-1, {1, 0});
        f = f - FormExpr::generator(g, gens.dsbar(i));
        f = f + FormExpr::generator(g, gens.dlambda()) * LaurentPoly::monomial(-2, -tp.t[i]);
        dtau[i] = f;

        FormExpr h = FormExpr::generator(g, gens.ds(i));
        h = h + FormExpr::generator(g, gens.dtbar(i)) * LaurentPoly::monomial(1, {1, 0});
        h = h + FormExpr::generator(g, gens.dlambda()) * LaurentPoly::constant(std::conj(tp.t[i]));
        dsigma[i] = h;
    }

    FormExpr out = FormExpr::zero(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            out = out + wedge(dtau[i], dsigma[j]) * cplx(-2.0 / kPi * om.imag()(i, j), 0);
    return out;
}

HklrForms hklr_forms(const PeriodMatrix& om) {
    const int g = om.genus();
    Generators gens{g};
    HklrForms forms;
    forms.phi1 = FormExpr::zero(g);
    forms.phi23 = FormExpr::zero(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            cplx y = om.imag()(i, j);
            forms.phi1 = forms.phi1 +
                         (wedge(FormExpr::generator(g, gens.dt(i)), FormExpr::generator(g, gens.dtbar(j))) +
                          wedge(FormExpr::generator(g, gens.ds(i)), FormExpr::generator(g, gens.dsbar(j)))) *
                             (kI / (2.0 * kPi) * y);
            forms.phi23 = forms.phi23 +
                          wedge(FormExpr::generator(g, gens.ds(i)), FormExpr::generator(g, gens.dt(j))) *
                              (y / kPi);
        }
    return forms;
}

namespace {

// least-squares proportionality constant and residual of f against reference
void proportionality(const FormExpr& f, const FormExpr& ref, cplx& ratio, double& resid) {
    // ratio from the largest reference coefficient, residual over all monomials
    double best = 0.0;
    Monomial best_m;
    for (const auto& [m, c] : ref.terms()) {
        double a = std::abs(c.coeff(0));
        if (a > best) {
            best = a;
            best_m = m;
        }
    }
    if (best == 0.0) {
        ratio = {0, 0};
        resid = f.max_abs_coeff();
        return;
    }
    ratio = f.coeff(best_m).coeff(0) / ref.coeff(best_m).coeff(0);
    FormExpr diff = f - ref * ratio;
    resid = diff.max_abs_coeff();
}

} // namespace

FiberDecomposition fiber_decomposition_check(const PeriodMatrix& om, const TwistorPoint& tp) {
    FormExpr fiber = pullback_curvature(om, tp).drop_dlambda();
    HklrForms ref = hklr_forms(om);

    FiberDecomposition out;
    double r1, r2, r3;
    proportionality(fiber.lambda_component(-1), ref.phi23, out.ratio_minus, r1);
    proportionality(fiber.lambda_component(0), ref.phi1 * (2.0 * kI), out.ratio_zero, r2);
    proportionality(fiber.lambda_component(1), ref.phi23.conjugated(), out.ratio_plus, r3);
    out.max_offproportionality = std::max({r1, r2, r3});
    out.ratio_spread = std::max({std::abs(out.ratio_minus - out.ratio_zero),
                                 std::abs(out.ratio_minus - out.ratio_plus),
                                 std::abs(out.ratio_zero - out.ratio_plus)});
    return out;
}

FormExpr connection_residue(const PeriodMatrix& om, const cvec& t, const cvec& s) {
    const int g = om.genus();
    if (static_cast<int>(t.size()) != g || static_cast<int>(s.size()) != g)
        throw Error("GenusMismatch", "connection_residue");
    (void)s; // the residue depends on t only; s fixes the chart point
    Generators gens{g};
    FormExpr out = FormExpr::zero(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            out = out + FormExpr::generator(g, gens.ds(j)) * (-(om.imag()(i, j) / kPi) * t[i]);
    return out;
}

ResidueProbe connection_residue_probe(const EllipticSurface& S, cplx t, cplx s, double lambda0) {
    // trace of the pulled-back universal connection over the divisor of a
    // second section; its ds-component diverges like t / lambda
    auto trace_ds = [&](cplx lambda) {
        TwistorPoint tp = TwistorPoint::make({t}, {s}, lambda);
        DeRhamPoint img = twistor_to_deRham(tp);
        cplx tau_c = img.t[0], sigma_c = img.s[0];

        // section l with a moving zero at the image point
        SectionData ell = make_moving_section(S, cplx(0.41, 0) + 0.33 * S.tau(), tau_c, sigma_c);
        // frame section m with its own moving zero
        SectionData frame = make_moving_section(S, cplx(0.71, 0) + 0.64 * S.tau(), tau_c, sigma_c);

        cplx du = jacobian_lift_derivative(S);
        // chain rule through the moving divisor of the frame: fiber component
        // of the connection contributes A_z(p1) du; base component directly
        cplx acc = section_dlog_z(S, ell, frame.p[0]) * du;
        acc += connection_form(S, ell, frame.p[0]).ds;
        acc -= connection_form(S, ell, frame.q[0]).ds;
        return acc;
    };

    cplx f1 = lambda0 * trace_ds(lambda0);
    cplx f2 = 0.5 * lambda0 * trace_ds(0.5 * lambda0);
    cplx f4 = 0.25 * lambda0 * trace_ds(0.25 * lambda0);
    cplx r2 = 2.0 * f2 - f1;
    cplx r4 = 2.0 * f4 - f2;
    cplx extrap = (4.0 * r4 - r2) / 3.0;

    ResidueProbe probe;
    probe.extrapolated = extrap;
    probe.expected = -(S.tau().imag() / kPi) * t;
    probe.rel_error = std::abs(extrap - probe.expected) / std::max(1e-30, std::abs(probe.expected));
    return probe;
}

} // namespace delpair
