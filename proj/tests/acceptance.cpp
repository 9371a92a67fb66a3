// Acceptance suite: every criterion is gated at its stated tolerance and
// runtime budget and prints one PASS/FAIL line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "delpair/harness.hpp"

#include <chrono>
#include <cstdio>

using namespace delpair;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report_line(int id, const char* name, bool pass, double worst, double tol, double secs,
                 double budget) {
    std::printf("ACCEPTANCE %d %-4s %-28s max residual %.3e (tol %.0e), %6.2f s (budget %.0f s)\n",
                id, pass ? "PASS" : "FAIL", name, worst, tol, secs, budget);
    std::fflush(stdout);
}

PeriodMatrix seeded_period(Lcg& rng, int g) {
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

cvec seeded_z(Lcg& rng, int g, double box) {
    cvec z(g);
    for (int i = 0; i < g; ++i) z[i] = rng.uniform_complex(-box, box);
    return z;
}

VerificationTask tau_task(const char* check, cplx tau, int grid, std::uint64_t seed = 1) {
    VerificationTask t;
    t.check = check;
    t.omega = ComplexMat(1);
    t.omega(0, 0) = tau;
    t.grid = grid;
    t.seed = seed;
    return t;
}

} // namespace

TEST_CASE("criterion 1: theta correctness suites") {
    Timer timer;
    const int points = 100;
    double worst_qp = 0.0, worst_parity = 0.0, worst_heat = 0.0, worst_grad = 0.0;

    // quasi-periodicity, 100 seeded points, genus 1..3, rel tol 1e-10
    {
        Lcg rng(20260811);
        for (int trial = 0; trial < points; ++trial) {
            int g = 1 + static_cast<int>(rng.next_u64() % 3);
            PeriodMatrix pm = seeded_period(rng, g);
            cvec z = seeded_z(rng, g, 1.0);
            std::vector<int> mm(g), nn(g);
            for (int i = 0; i < g; ++i) {
                mm[i] = static_cast<int>(rng.next_u64() % 5) - 2;
                nn[i] = static_cast<int>(rng.next_u64() % 5) - 2;
            }
            cvec zs(g);
            for (int i = 0; i < g; ++i) {
                zs[i] = z[i] + static_cast<double>(mm[i]);
                for (int j = 0; j < g; ++j) zs[i] += pm.omega()(i, j) * static_cast<double>(nn[j]);
            }
            cplx fac{0, 0};
            for (int i = 0; i < g; ++i) {
                cplx row{0, 0};
                for (int j = 0; j < g; ++j) row += pm.omega()(i, j) * static_cast<double>(nn[j]);
                fac += -kPi * kI * static_cast<double>(nn[i]) * row -
                       2.0 * kPi * kI * static_cast<double>(nn[i]) * z[i];
            }
            Characteristic ch = Characteristic::zero(g);
            LogScaled lhs = theta(zs, pm, ch).scaled();
            LogScaled rhs = theta(z, pm, ch).scaled();
            rhs.exponent += fac.real();
            rhs.mantissa *= std::exp(cplx(0, fac.imag()));
            worst_qp = std::max(worst_qp, std::abs((lhs / rhs).value() - 1.0));
        }
    }

    // parity, rel tol 1e-10
    {
        Lcg rng(414243);
        for (int trial = 0; trial < points; ++trial) {
            int g = 1 + static_cast<int>(rng.next_u64() % 3);
            PeriodMatrix pm = seeded_period(rng, g);
            cvec z = seeded_z(rng, g, 1.0);
            cvec zm(g);
            for (int i = 0; i < g; ++i) zm[i] = -z[i];
            cplx even_p = theta(z, pm, Characteristic::zero(g)).value();
            cplx even_m = theta(zm, pm, Characteristic::zero(g)).value();
            worst_parity =
                std::max(worst_parity, std::abs(even_p - even_m) / std::max(1.0, std::abs(even_p)));
            if (g == 1) {
                cplx odd_p = theta(z, pm, Characteristic::half(1)).value();
                cplx odd_m = theta(zm, pm, Characteristic::half(1)).value();
                worst_parity = std::max(worst_parity,
                                        std::abs(odd_p + odd_m) / std::max(1.0, std::abs(odd_p)));
            }
        }
    }

    // heat equation at genus 1, rel tol 1e-4
    {
        Lcg rng(777);
        for (int trial = 0; trial < points; ++trial) {
            cplx tau{rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.8)};
            cplx z = rng.uniform_complex(-0.4, 0.4);
            double h = 1e-3;
            auto th = [&](cplx zz, cplx tt) {
                return theta({zz}, PeriodMatrix::from_tau(tt), Characteristic::zero(1), 1e-14).value();
            };
            cplx d2z = (th(z + h, tau) - 2.0 * th(z, tau) + th(z - h, tau)) / (h * h);
            cplx rhs = 4.0 * kPi * kI * (th(z, tau + h) - th(z, tau - h)) / (2.0 * h);
            worst_heat = std::max(worst_heat, std::abs(d2z - rhs) / std::max(1.0, std::abs(rhs)));
        }
    }

    // gradient versus Wirtinger finite differences, rel tol 1e-6
    {
        Lcg rng(5151);
        for (int trial = 0; trial < points; ++trial) {
            int g = 1 + static_cast<int>(rng.next_u64() % 3);
            PeriodMatrix pm = seeded_period(rng, g);
            cvec z = seeded_z(rng, g, 0.7);
            ThetaValue tv = theta(z, pm, Characteristic::zero(g), 1e-14, true);
            cvec grad = tv.gradient_value();
            int k = static_cast<int>(rng.next_u64() % g);
            auto fn = [&](cplx w) {
                cvec zz = z;
                zz[k] = w;
                return theta(zz, pm, Characteristic::zero(g), 1e-14).value();
            };
            cplx fd = wirtinger_fd(fn, z[k], 1e-5);
            worst_grad = std::max(worst_grad, std::abs(grad[k] - fd) / std::max(1.0, std::abs(fd)));
        }
    }

    double secs = timer.seconds();
    bool pass = worst_qp < 1e-10 && worst_parity < 1e-10 && worst_heat < 1e-4 &&
                worst_grad < 1e-6 && secs < 10.0;
    report_line(1, "theta", pass, std::max({worst_qp, worst_parity, worst_heat, worst_grad}), 1e-4,
                secs, 10);
    CHECK(worst_qp < 1e-10);
    CHECK(worst_parity < 1e-10);
    CHECK(worst_heat < 1e-4);
    CHECK(worst_grad < 1e-6);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 2: coordinate atlas round trips") {
    Timer timer;
    double worst = 0.0;
    Lcg rng(616263);
    for (int trial = 0; trial < 100; ++trial) {
        int g = 1 + static_cast<int>(rng.next_u64() % 3);
        PeriodMatrix pm = seeded_period(rng, g);
        cvec u = seeded_z(rng, g, 0.8);
        JacobianPoint round = jacobian_of_deRham(unitary_section(u, pm), pm);
        worst = std::max(worst, lattice_distance(round.u, u, pm));
        DeRhamPoint p = DeRhamPoint::make(seeded_z(rng, g, 0.8), seeded_z(rng, g, 0.8));
        worst = std::max(worst, jacobian_cross_check(p, pm));
    }
    double secs = timer.seconds();
    bool pass = worst < 1e-10 && secs < 1.0;
    report_line(2, "atlas", pass, worst, 1e-10, secs, 1);
    CHECK(worst < 1e-10);
    CHECK(secs < 1.0);
}

TEST_CASE("criterion 3: Weil reciprocity and the classical laws") {
    Timer timer;
    VerificationReport wr = run_task(tau_task("reciprocity", kI, 5, 11));
    VerificationReport r1 = run_task(tau_task("reciprocity1", kI, 5, 12));
    VerificationReport r2 = run_task(tau_task("reciprocity2", kI, 5, 13));
    double secs = timer.seconds();
    double worst = std::max({wr.max_residual, r1.max_residual, r2.max_residual});
    bool pass = wr.pass && r1.pass && r2.pass && secs < 30.0;
    report_line(3, "weil-reciprocity", pass, worst, 1e-8, secs, 30);
    CHECK(wr.pass);
    CHECK(r1.pass);
    CHECK(r2.pass);
    CHECK(secs < 30.0);
}

TEST_CASE("criterion 4: flatness of the torsion comparison") {
    Timer timer;
    double worst = 0.0, weakest_witness = 1e300;
    bool all_pass = true;
    for (cplx tau : {cplx{0, 1}, cplx{1, 2}, cplx{0.3, 1.7}}) {
        VerificationReport rep = run_task(tau_task("flatness", tau, 5, 21));
        all_pass = all_pass && rep.pass;
        worst = std::max(worst, rep.max_residual);
        weakest_witness =
            std::min(weakest_witness, rep.constants.at("offlocus_witness_residual").real());
    }
    double secs = timer.seconds();
    bool pass = all_pass && worst <= 1e-8 && weakest_witness > 1e-3 && secs < 10.0;
    report_line(4, "flatness", pass, worst, 1e-8, secs, 10);
    CHECK(all_pass);
    CHECK(worst <= 1e-8);
    CHECK(weakest_witness > 1e-3);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 5: curvature consistency") {
    Timer timer;
    VerificationTask task;
    task.check = "curvature";
    task.seed = 31;
    VerificationReport rep = run_task(task);
    double secs = timer.seconds();
    bool pass = rep.pass && rep.max_residual <= 1e-12;
    report_line(5, "curvature", pass, rep.max_residual, 1e-12, secs, 30);
    CHECK(rep.error.empty());
    CHECK(rep.max_residual <= 1e-12);
}

TEST_CASE("criterion 6: twistor decomposition") {
    Timer timer;
    VerificationReport rep = run_task(tau_task("twistor", kI, 5, 41));
    double secs = timer.seconds();
    double spread = rep.constants.at("constant_spread").real();
    double probe = rep.constants.at("residue_rel_error").real();
    bool pass = rep.pass && rep.max_residual < 1e-12 && spread < 1e-12 && probe < 1e-4;
    report_line(6, "twistor", pass, std::max(rep.max_residual, spread), 1e-12, secs, 30);
    std::printf("      reported proportionality constant: %.15g\n",
                rep.constants.at("proportionality_constant").real());
    CHECK(rep.error.empty());
    CHECK(rep.max_residual < 1e-12);
    CHECK(spread < 1e-12);
    CHECK(probe < 1e-4);
}

TEST_CASE("criterion 7: spectral torsion oracle") {
    Timer timer;
    VerificationReport rep = run_task(tau_task("torsion-oracle", kI, 4, 51));
    double secs = timer.seconds();
    bool pass = rep.pass && rep.max_residual < 1e-4 && secs < 300.0;
    report_line(7, "torsion-oracle", pass, rep.max_residual, 1e-4, secs, 300);
    CHECK(rep.error.empty());
    CHECK(rep.max_residual < 1e-4);
    CHECK(secs < 300.0);
}

TEST_CASE("criterion 8: curvature recovers the cohomology pairings") {
    Timer timer;
    VerificationReport rep = run_task(tau_task("gm-curvature", kI, 3, 61));
    double secs = timer.seconds();
    bool pass = rep.pass && rep.max_residual < 1e-6 && secs < 30.0;
    report_line(8, "gm-curvature", pass, rep.max_residual, 1e-6, secs, 30);
    CHECK(rep.error.empty());
    CHECK(rep.max_residual < 1e-6);
    CHECK(secs < 30.0);
}
