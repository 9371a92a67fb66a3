// Benchmark: OpenMP-parallel kernels against their serial reference
// implementations. The parallel paths must agree bitwise; this target reports
// the timing side of that bargain.
#include "delpair/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>

using namespace delpair;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double time_call(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

PeriodMatrix bench_period(int g) {
    Lcg rng(0xbe9c);
    ComplexMat m(g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j <= i; ++j) {
            double re = rng.uniform(-0.5, 0.5);
            m(i, j) += cplx(re, 0);
            if (i != j) m(j, i) += cplx(re, 0);
        }
    for (int i = 0; i < g; ++i) m(i, i) += cplx(0, 1.2);
    return PeriodMatrix::validate(m);
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s %10.3f ms %12.3f ms %8.2fx   %s\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel, identical ? "bitwise-equal" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n");
#endif
    std::printf("%-28s %13s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

    // theta batch, genus 2, 20k points with gradients
    {
        PeriodMatrix pm = bench_period(2);
        Lcg rng(7);
        std::vector<cvec> pts;
        pts.reserve(20000);
        for (int i = 0; i < 20000; ++i)
            pts.push_back({rng.uniform_complex(-1.0, 1.0), rng.uniform_complex(-1.0, 1.0)});
        std::vector<ThetaValue> a, b;
        double ts = time_call([&] {
            a = theta_batch_serial(pts, pm, Characteristic::zero(2), 1e-12, true);
        });
        double tp = time_call([&] {
            b = theta_batch_parallel(pts, pm, Characteristic::zero(2), 1e-12, true);
        });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].mantissa == b[i].mantissa && a[i].exponent == b[i].exponent;
        row("theta batch g=2 (20k pts)", ts, tp, same);
    }

    // flatness verification grid
    {
        VerificationTask task;
        task.check = "flatness";
        task.omega = ComplexMat(1);
        task.omega(0, 0) = cplx{0.3, 1.7};
        task.grid = 24;
        task.seed = 5;
        VerificationReport ra, rb;
        double ts = time_call([&] { ra = run_task(task, false); });
        double tp = time_call([&] { rb = run_task(task, true); });
        bool same = ra.residuals == rb.residuals && ra.max_residual == rb.max_residual;
        row("flatness grid 24x24", ts, tp, same);
    }

    // Weil reciprocity grid
    {
        VerificationTask task;
        task.check = "reciprocity";
        task.omega = ComplexMat(1);
        task.omega(0, 0) = cplx{1.0, 2.0};
        task.grid = 8;
        task.seed = 5;
        VerificationReport ra, rb;
        double ts = time_call([&] { ra = run_task(task, false); });
        double tp = time_call([&] { rb = run_task(task, true); });
        bool same = ra.residuals == rb.residuals;
        row("weil reciprocity grid 8x8x5", ts, tp, same);
    }

    // spectral determinants (quadrature nodes parallelized inside)
    {
        double ts = 0.0, tp = 0.0;
        double va = 0.0, vb = 0.0;
        SpectralConfig cfg;
        cfg.quad_nodes = 640;
#ifdef _OPENMP
        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        ts = time_call([&] { va = spectral_log_det_genus1({0.31, 0.17}, kI, cfg); });
        omp_set_num_threads(saved);
        tp = time_call([&] { vb = spectral_log_det_genus1({0.31, 0.17}, kI, cfg); });
#else
        ts = time_call([&] { va = spectral_log_det_genus1({0.31, 0.17}, kI, cfg); });
        tp = ts;
        vb = va;
#endif
        row("spectral log det (640 nodes)", ts, tp, va == vb);
    }

    return 0;
}
