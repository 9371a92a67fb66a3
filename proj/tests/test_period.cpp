#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "delpair/period.hpp"

using namespace delpair;

namespace {

ComplexMat mat1(cplx v) {
    ComplexMat m(1);
    m(0, 0) = v;
    return m;
}

PeriodMatrix random_period(Lcg& rng, int g) {
    ComplexMat m(g);
    // random symmetric real part, SPD imaginary part with eigenvalues O(1)
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
            for (int j = 0; j < g; ++j) m(i, j) += cplx(0, 0.7 * v[i] * v[j]);
    }
    for (int i = 0; i < g; ++i) m(i, i) += cplx(0, 1.0);
    return PeriodMatrix::validate(m);
}

} // namespace

TEST_CASE("validate accepts the upper half plane and rejects the lower") {
    PeriodMatrix pm = PeriodMatrix::validate(mat1(kI));
    CHECK(pm.genus() == 1);
    CHECK(pm.tau() == kI);

    CHECK_THROWS_WITH_AS(PeriodMatrix::validate(mat1(-kI)), doctest::Contains("NotPositiveDefinite"),
                         Error);
}

TEST_CASE("validate rejects asymmetry") {
    ComplexMat m(2);
    m(0, 0) = kI;
    m(0, 1) = cplx(0.4, 0);
    m(1, 0) = cplx(0.3, 0);
    m(1, 1) = 2.0 * kI;
    try {
        PeriodMatrix::validate(m);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "NotSymmetric");
    }
}

TEST_CASE("validate rejects nearly singular imaginary part") {
    ComplexMat m(1);
    m(0, 0) = cplx(0.0, 5e-4);
    CHECK_THROWS_AS(PeriodMatrix::validate(m), Error);
}

TEST_CASE("imag_inverse scalar and diagonal cases") {
    PeriodMatrix pm = PeriodMatrix::validate(mat1(2.0 * kI));
    CHECK(pm.imag_inverse()(0, 0) == doctest::Approx(0.5).epsilon(1e-13));

    PeriodMatrix pi = PeriodMatrix::validate(mat1(kI));
    CHECK(pi.imag_inverse()(0, 0) == doctest::Approx(1.0).epsilon(1e-13));

    ComplexMat d(2);
    d(0, 0) = kI;
    d(1, 1) = 2.0 * kI;
    PeriodMatrix pd = PeriodMatrix::validate(d);
    CHECK(pd.imag_inverse()(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pd.imag_inverse()(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(pd.imag_inverse()(0, 1)) < 1e-13);
}

TEST_CASE("imag_cholesky reconstructs Im Omega") {
    ComplexMat m(2);
    m(0, 0) = cplx(0.1, 2.0);
    m(0, 1) = m(1, 0) = cplx(-0.2, 1.0);
    m(1, 1) = cplx(0.3, 2.0);
    PeriodMatrix pm = PeriodMatrix::validate(m);
    const RealMat& L = pm.imag_cholesky();
    RealMat rec = L * L.transpose();
    double resid = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) resid = std::max(resid, std::abs(rec(i, j) - pm.imag()(i, j)));
    CHECK(resid < 1e-12);

    PeriodMatrix p4 = PeriodMatrix::validate(mat1(4.0 * kI));
    CHECK(p4.imag_cholesky()(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("inverse times Im Omega is the identity on random inputs") {
    Lcg rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        int g = 1 + static_cast<int>(rng.next_u64() % 3);
        PeriodMatrix pm = random_period(rng, g);
        RealMat prod = pm.imag_inverse() * pm.imag();
        double resid = 0.0;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                resid = std::max(resid, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
        CHECK(resid < 1e-12);
    }
}

TEST_CASE("validate is idempotent on validated output") {
    Lcg rng(7);
    PeriodMatrix pm = random_period(rng, 2);
    PeriodMatrix again = PeriodMatrix::validate(pm.omega());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(again.omega()(i, j) == pm.omega()(i, j));
}
