#ifndef DELPAIR_HARNESS_HPP
#define DELPAIR_HARNESS_HPP

#include "delpair/surface.hpp"
#include "delpair/torsion.hpp"
#include "delpair/twistor.hpp"

#include <map>
#include <optional>

namespace delpair {

enum class FdScheme { central, richardson };

// Wirtinger derivative d/dw = (d/dx - i d/dy)/2 of a scalar field by central
// differences; the Richardson scheme halves h once and extrapolates.
// Throws Error("StencilHitsSingularity") when the stencil leaves the domain.
cplx wirtinger_fd(const std::function<cplx(cplx)>& fn, cplx point, double h,
                  FdScheme scheme = FdScheme::central);

struct VerificationTask {
    std::string check; // reciprocity | reciprocity1 | reciprocity2 | flatness |
                       // curvature | twistor | torsion-oracle | gm-curvature
    ComplexMat omega;  // genus-1 tasks read omega(0,0) as tau
    int grid = 5;
    double tol = 0.0;  // 0 picks the per-check default
    std::uint64_t seed = 1;
    cplx lambda{0.5, 0};
    bool slow = false;

    // optional explicit divisor data for the reciprocity checks
    std::optional<SectionData> section;
    std::optional<FunctionData> function;

    double effective_tol() const;
};

struct VerificationReport {
    VerificationTask task;
    std::vector<double> residuals;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    int argmax = -1;
    std::map<std::string, cplx> constants; // measured, reported, never gated
    std::vector<std::string> notes;
    bool pass = false;
    std::string error; // first captured error, empty when clean
};

// Evaluate `count` independent points; the parallel path distributes across
// OpenMP threads into preassigned slots, so aggregation is order-independent
// and the serial runner reproduces it bitwise.
struct GridOutcome {
    std::vector<double> residuals;
    std::vector<std::string> errors;
};
GridOutcome run_grid(int count, const std::function<double(int)>& eval, bool parallel);

// One verification task; errors are captured in the report.
VerificationReport run_task(const VerificationTask& task, bool parallel = true);

// All tasks; sibling tasks are isolated from each other's failures.
std::vector<VerificationReport> run_suite(const std::vector<VerificationTask>& tasks,
                                          bool parallel = true);

// 0: all pass, 1: any failure or error.
int suite_exit_code(const std::vector<VerificationReport>& reports);

const std::vector<std::string>& known_checks();

// --------------------------------------------------------------------- JSON

std::string report_to_json(const VerificationReport& rep);
std::string suite_to_json(const std::vector<VerificationReport>& reps);
std::vector<VerificationTask> tasks_from_json(const std::string& text);
std::string merge_report_files(const std::vector<std::string>& payloads);

// moduli point records: {"genus": g, "t": [[re,im],...], "s": [[re,im],...]}
std::string deRham_to_json(const DeRhamPoint& p);
DeRhamPoint deRham_from_json(const std::string& text);

// period matrix records: {"genus": g, "omega": [[[re,im],...],...]} or {"tau":[re,im]}
ComplexMat omega_from_json(const std::string& text);

// exterior-algebra elements: [{"monomial": ["dt1","ds2"], "coeff": [[deg,[re,im]],...]}, ...]
std::string form_to_json(const FormExpr& f);

} // namespace delpair

#endif
