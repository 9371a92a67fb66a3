#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "delpair/forms.hpp"

using namespace delpair;

namespace {

PeriodMatrix genus1(cplx tau) { return PeriodMatrix::from_tau(tau); }

PeriodMatrix random_period(Lcg& rng, int g) {
    ComplexMat m(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j <= i; ++j) {
            double re = rng.uniform(-0.5, 0.5);
            m(i, j) += cplx(re, 0);
            if (i != j) m(j, i) += cplx(re, 0);
        }
    for (int k = 0; k < g; ++k) {
        rvec v(g);
        for (int i = 0; i < g; ++i) v[i] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) m(i, j) += cplx(0, 0.6 * v[i] * v[j]);
    }
    for (int i = 0; i < g; ++i) m(i, i) += cplx(0, 1.0);
    return PeriodMatrix::validate(m);
}

} // namespace

TEST_CASE("wedge antisymmetry and nilpotency") {
    Generators gens{1};
    FormExpr dt = FormExpr::generator(1, gens.dt(0));
    FormExpr ds = FormExpr::generator(1, gens.ds(0));

    FormExpr ab = wedge(dt, ds);
    FormExpr ba = wedge(ds, dt);
    CHECK((ab + ba).is_zero());
    CHECK(wedge(dt, dt).is_zero());
}

TEST_CASE("Laurent coefficients cancel across the wedge") {
    Generators gens{1};
    FormExpr a = FormExpr::generator(1, gens.dt(0)) * LaurentPoly::monomial(-1, {1, 0});
    FormExpr b = FormExpr::generator(1, gens.ds(0)) * LaurentPoly::monomial(1, {1, 0});
    FormExpr ab = wedge(a, b);
    FormExpr plain = wedge(FormExpr::generator(1, gens.dt(0)), FormExpr::generator(1, gens.ds(0)));
    CHECK((ab - plain).is_zero(1e-15));
}

TEST_CASE("Laurent window overflow is an error") {
    LaurentPoly p = LaurentPoly::monomial(3, {1, 0});
    CHECK_THROWS_AS(p * p, Error);
}

TEST_CASE("fiber pairing: genus-1 oracle and structure") {
    // Oracle: integral of dz wedge conj(dz) over the fundamental parallelogram
    // {x + y tau} equals (conj(tau) - tau) = -2i Im tau.
    cplx tau{0.3, 1.7};
    PeriodMatrix pm = genus1(tau);
    RelClass omega = RelClass::zero(1);
    omega.coeff[0] = 1.0;
    RelClass omegabar = RelClass::zero(1);
    omegabar.coeff[1] = 1.0;

    cplx direct = std::conj(tau) - tau; // quadrature-free: the 2-form is constant
    CHECK(std::abs(fiber_pairing(pm, omega, omegabar) - direct) < 1e-14);
    CHECK(std::abs(fiber_pairing(pm, omega, omega)) < 1e-15);
    CHECK(std::abs(fiber_pairing(pm, omega, omegabar) + fiber_pairing(pm, omegabar, omega)) < 1e-15);
}

TEST_CASE("fiber pairing is purely imaginary with negative diagonal on (omega_i, conj omega_i)") {
    Lcg rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int g = 1 + static_cast<int>(rng.next_u64() % 3);
        PeriodMatrix pm = random_period(rng, g);
        for (int i = 0; i < g; ++i) {
            RelClass a = RelClass::zero(g);
            a.coeff[i] = 1.0;
            RelClass b = RelClass::zero(g);
            b.coeff[g + i] = 1.0;
            cplx v = fiber_pairing(pm, a, b);
            CHECK(std::abs(v.real()) < 1e-15);
            CHECK(v.imag() < 0.0);
        }
    }
}

TEST_CASE("intersection curvature matches the closed form at genus 1") {
    PeriodMatrix pm = genus1(kI);
    GaussManinInvariant gm = GaussManinInvariant::universal(1);
    FormExpr f = intersection_curvature(pm, gm, gm);
    Generators gens{1};
    FormExpr expected =
        wedge(FormExpr::generator(1, gens.dt(0)), FormExpr::generator(1, gens.ds(0))) *
        cplx(-2.0 / kPi, 0);
    CHECK((f - expected).max_abs_coeff() < 1e-15);
}

TEST_CASE("intersection curvature closed form for genus 2 and 3") {
    Lcg rng(43);
    for (int g : {2, 3}) {
        PeriodMatrix pm = random_period(rng, g);
        GaussManinInvariant gm = GaussManinInvariant::universal(g);
        FormExpr f = intersection_curvature(pm, gm, gm);
        FormExpr expected = FormExpr::zero(g);
        Generators gens{g};
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                expected = expected + wedge(FormExpr::generator(g, gens.dt(i)),
                                            FormExpr::generator(g, gens.ds(j))) *
                                          cplx(-2.0 / kPi * pm.imag()(i, j), 0);
        CHECK((f - expected).max_abs_coeff() < 1e-14);
    }
}

TEST_CASE("bilinearity: zero second argument gives the zero form") {
    PeriodMatrix pm = genus1(kI);
    FormExpr f =
        intersection_curvature(pm, GaussManinInvariant::universal(1), GaussManinInvariant::zero(1));
    CHECK(f.is_zero());
}

TEST_CASE("intersection curvature is symmetric in its arguments") {
    Lcg rng(47);
    PeriodMatrix pm = random_period(rng, 2);
    GaussManinInvariant a = GaussManinInvariant::universal(2);
    GaussManinInvariant b = GaussManinInvariant::chern_family(2);
    FormExpr ab = intersection_curvature(pm, a, b);
    FormExpr ba = intersection_curvature(pm, b, a);
    CHECK((ab - ba).max_abs_coeff() < 1e-14);
}

TEST_CASE("trace curvature equals intersection curvature of the Chern pair") {
    Lcg rng(53);
    for (int g : {1, 2, 3}) {
        PeriodMatrix pm = random_period(rng, g);
        GaussManinInvariant univ = GaussManinInvariant::universal(g);
        GaussManinInvariant chern = GaussManinInvariant::chern_family(g);
        FormExpr tr = trace_curvature(pm, univ, univ);
        FormExpr inter = intersection_curvature(pm, univ, chern);
        CHECK((tr - inter).max_abs_coeff() < 1e-14);
    }
}

TEST_CASE("trace and intersection curvature agree after unitary restriction") {
    Lcg rng(59);
    for (int g : {1, 2, 3}) {
        PeriodMatrix pm = random_period(rng, g);
        GaussManinInvariant univ = GaussManinInvariant::universal(g);
        FormExpr tr = trace_curvature(pm, univ, univ).restrict_unitary();
        FormExpr inter = intersection_curvature(pm, univ, univ).restrict_unitary();
        CHECK((tr - inter).max_abs_coeff() < 1e-13);
    }
}

TEST_CASE("frozen antiholomorphic variation flattens the trace connection") {
    PeriodMatrix pm = genus1(kI);
    GaussManinInvariant frozen = GaussManinInvariant::universal(1).holomorphic_part();
    FormExpr f = trace_curvature(pm, frozen, frozen);
    CHECK(f.is_zero());

    FormExpr z = trace_curvature(pm, GaussManinInvariant::zero(1), GaussManinInvariant::universal(1));
    CHECK(z.is_zero());
}

TEST_CASE("conjugation flips generators and conjugates coefficients") {
    Generators gens{1};
    FormExpr f = wedge(FormExpr::generator(1, gens.dt(0)), FormExpr::generator(1, gens.dsbar(0))) *
                 cplx(0, 2);
    FormExpr c = f.conjugated();
    CHECK(c.coeff({gens.dtbar(0), gens.ds(0)}).coeff(0) == cplx(0, -2));
    // conj is an involution
    CHECK((c.conjugated() - f).is_zero());
}

TEST_CASE("lambda evaluation and components") {
    Generators gens{1};
    LaurentPoly p = LaurentPoly::monomial(-1, {2, 0}) + LaurentPoly::monomial(1, {0, 1});
    FormExpr f = FormExpr::generator(1, gens.dt(0)) * p;
    CHECK(f.min_lambda_degree() == -1);
    CHECK(f.max_lambda_degree() == 1);
    FormExpr at2 = f.eval_lambda({2, 0});
    CHECK(std::abs(at2.coeff({gens.dt(0)}).coeff(0) - (cplx{1, 0} + cplx{0, 2})) < 1e-15);
    FormExpr comp = f.lambda_component(-1);
    CHECK(comp.coeff({gens.dt(0)}).coeff(-1) == cplx{0, 0}); // component re-seats at degree 0
    CHECK(comp.coeff({gens.dt(0)}).coeff(0) == cplx{2, 0});
}

TEST_CASE("genus mismatch reported by pairings") {
    PeriodMatrix pm = genus1(kI);
    RelClass c2 = RelClass::zero(2);
    RelClass c1 = RelClass::zero(1);
    CHECK_THROWS_AS(fiber_pairing(pm, c2, c2), Error);
    CHECK_THROWS_AS(gm_cup_pushforward(pm, GaussManinInvariant::universal(2),
                                       GaussManinInvariant::universal(2)),
                    Error);
}
