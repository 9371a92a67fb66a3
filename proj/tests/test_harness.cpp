#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "delpair/harness.hpp"

using namespace delpair;

TEST_CASE("wirtinger_fd on holomorphic and antiholomorphic probes") {
    auto ident = [](cplx w) { return w; };
    CHECK(std::abs(wirtinger_fd(ident, {0.3, 0.4}, 1e-5) - 1.0) < 1e-10);

    auto conj_fn = [](cplx w) { return std::conj(w); };
    CHECK(std::abs(wirtinger_fd(conj_fn, {0.3, 0.4}, 1e-5)) < 1e-10);

    auto square = [](cplx w) { return w * w; };
    cplx at{1.0, 1.0};
    CHECK(std::abs(wirtinger_fd(square, at, 1e-5) - 2.0 * at) < 1e-8);
    CHECK(std::abs(wirtinger_fd(square, at, 1e-4, FdScheme::richardson) - 2.0 * at) < 1e-9);
}

TEST_CASE("wirtinger_fd reports singular stencils") {
    auto bad = [](cplx w) { return 1.0 / (w - cplx{0.5, 0.0}); };
    // the stencil brackets the pole: x-step lands exactly on it
    try {
        wirtinger_fd(bad, {0.5 - 1e-5, 0.0}, 1e-5);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "StencilHitsSingularity");
    }
}

TEST_CASE("empty suite exits clean") {
    std::vector<VerificationReport> reps = run_suite({});
    CHECK(reps.empty());
    CHECK(suite_exit_code(reps) == 0);
}

TEST_CASE("flatness task passes at the default grid") {
    VerificationTask task;
    task.check = "flatness";
    task.omega = ComplexMat(1);
    task.omega(0, 0) = kI;
    task.grid = 5;
    task.tol = 1e-8;
    VerificationReport rep = run_task(task);
    CHECK(rep.error.empty());
    CHECK(rep.pass);
    CHECK(rep.max_residual <= 1e-8);
    CHECK(rep.constants.at("offlocus_witness_residual").real() > 1e-3);
}

TEST_CASE("colliding divisors are captured in the report, not thrown") {
    VerificationTask task;
    task.check = "reciprocity";
    task.omega = ComplexMat(1);
    task.omega(0, 0) = kI;
    task.grid = 2;
    // explicit function whose divisor collides with the seeded section base
    FunctionData f;
    f.x = {cplx{0.25, 0.35}, cplx{0.25, 0.35}};
    f.y = {cplx{0.25, 0.35}, cplx{0.25, 0.35}};
    task.function = f;
    VerificationReport rep = run_task(task);
    CHECK(!rep.pass);
    CHECK(rep.error.find("DivisorCollision") != std::string::npos);
    CHECK(suite_exit_code({rep}) == 1);
}

TEST_CASE("parallel and serial grid runs agree bitwise") {
    VerificationTask task;
    task.check = "flatness";
    task.omega = ComplexMat(1);
    task.omega(0, 0) = cplx{1.0, 2.0};
    task.grid = 4;
    task.seed = 99;
    VerificationReport a = run_task(task, false);
    VerificationReport b = run_task(task, true);
    REQUIRE(a.residuals.size() == b.residuals.size());
    for (std::size_t i = 0; i < a.residuals.size(); ++i) CHECK(a.residuals[i] == b.residuals[i]);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.mean_residual == b.mean_residual);
}

TEST_CASE("reports are reproducible for a fixed seed") {
    VerificationTask task;
    task.check = "reciprocity2";
    task.omega = ComplexMat(1);
    task.omega(0, 0) = cplx{0.3, 1.7};
    task.grid = 3;
    task.seed = 12345;
    VerificationReport a = run_task(task);
    VerificationReport b = run_task(task);
    REQUIRE(a.residuals.size() == b.residuals.size());
    for (std::size_t i = 0; i < a.residuals.size(); ++i) CHECK(a.residuals[i] == b.residuals[i]);
}

TEST_CASE("report JSON round trip and merging") {
    VerificationTask task;
    task.check = "curvature";
    task.grid = 1;
    VerificationReport rep = run_task(task);
    CHECK(rep.pass);

    std::string one = report_to_json(rep);
    CHECK(one.find("\"schema\": 1") != std::string::npos);
    CHECK(one.find("curvature") != std::string::npos);

    std::string merged = merge_report_files({one, one});
    CHECK(merged.find("\"schema\": 1") != std::string::npos);
    // two reports present
    CHECK(merged.find("max_residual") != merged.rfind("max_residual"));
}

TEST_CASE("task files parse with tau, omega, and divisor data") {
    std::string text = R"({
      "tasks": [
        {"check": "flatness", "tau": [0.0, 1.0], "grid": 3, "tol": 1e-8, "seed": 7},
        {"check": "curvature", "omega": [[[0.0,1.0],[0.1,0.2]],[[0.1,0.2],[0.0,1.5]]], "grid": 1},
        {"check": "reciprocity1", "tau": [0.0, 1.0], "grid": 2,
         "function": {"x": [[0.2,0.3],[0.7,0.5]], "y": [[0.4,0.1],[0.5,0.7]], "mt": 0, "nt": 0}}
      ]
    })";
    std::vector<VerificationTask> tasks = tasks_from_json(text);
    REQUIRE(tasks.size() == 3);
    CHECK(tasks[0].check == "flatness");
    CHECK(tasks[0].seed == 7);
    CHECK(tasks[1].omega.n == 2);
    CHECK(tasks[2].function.has_value());
    CHECK(tasks[2].function->x.size() == 2);
}

TEST_CASE("moduli point and omega records round trip") {
    DeRhamPoint p = DeRhamPoint::make({cplx{0.1, 0.2}, cplx{-0.3, 0.4}},
                                      {cplx{0.5, -0.6}, cplx{0.0, 1.0}});
    DeRhamPoint q = deRham_from_json(deRham_to_json(p));
    CHECK(q.genus == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(q.t[i] == p.t[i]);
        CHECK(q.s[i] == p.s[i]);
    }

    ComplexMat om = omega_from_json(R"({"tau": [0.5, 1.5]})");
    CHECK(om.n == 1);
    CHECK(om(0, 0) == cplx{0.5, 1.5});
}

TEST_CASE("unknown checks error out without aborting siblings") {
    VerificationTask bad;
    bad.check = "nonsense";
    VerificationTask good;
    good.check = "curvature";
    good.grid = 1;
    std::vector<VerificationReport> reps = run_suite({bad, good});
    CHECK(!reps[0].pass);
    CHECK(reps[0].error.find("UnknownCheck") != std::string::npos);
    CHECK(reps[1].pass);
    CHECK(suite_exit_code(reps) == 1);
}
