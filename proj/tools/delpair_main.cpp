#include <CLI11.hpp>
#include <json.hpp>

#include "delpair/harness.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace delpair;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("InvalidInput", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("InvalidInput", "cannot write " + path);
    out << text;
}

// "re,im" -> complex
cplx parse_complex(const std::string& text) {
    std::istringstream ss(text);
    double re = 0, im = 0;
    char comma = 0;
    ss >> re;
    if (ss >> comma && comma == ',') ss >> im;
    if (ss.fail()) throw Error("InvalidInput", "expected re,im in '" + text + "'");
    return {re, im};
}

// "re,im;re,im;..." -> vector of complex
cvec parse_complex_list(const std::string& text) {
    cvec out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_complex(item));
    return out;
}

// "a1,..,ag;b1,..,bg" -> characteristic
Characteristic parse_characteristic(const std::string& text, int genus) {
    Characteristic ch = Characteristic::zero(genus);
    if (text.empty()) return ch;
    std::istringstream ss(text);
    std::string alpha_part, beta_part;
    std::getline(ss, alpha_part, ';');
    std::getline(ss, beta_part, ';');
    auto fill = [&](const std::string& part, rvec& dst) {
        std::istringstream ps(part);
        std::string item;
        int i = 0;
        while (std::getline(ps, item, ',') && i < genus) dst[i++] = std::stod(item);
        if (i != genus) throw Error("InvalidInput", "characteristic needs " +
                                                        std::to_string(genus) + " entries per half");
    };
    fill(alpha_part, ch.alpha);
    fill(beta_part, ch.beta);
    return ch;
}

int run_theta(const std::string& omega_file, const std::string& tau_text, const std::string& z_text,
              const std::string& char_text, double tol, bool want_grad,
              const std::string& json_out) {
    ComplexMat raw;
    if (!omega_file.empty()) {
        raw = omega_from_json(read_file(omega_file));
    } else {
        raw = ComplexMat(1);
        raw(0, 0) = tau_text.empty() ? kI : parse_complex(tau_text);
    }
    PeriodMatrix pm = PeriodMatrix::validate(raw);
    cvec z = parse_complex_list(z_text);
    if (static_cast<int>(z.size()) != pm.genus())
        throw Error("InvalidInput", "--z needs " + std::to_string(pm.genus()) + " components");
    Characteristic ch = parse_characteristic(char_text, pm.genus());

    ThetaValue tv = theta(z, pm, ch, tol, want_grad);
    json j;
    j["mantissa"] = json::array({tv.mantissa.real(), tv.mantissa.imag()});
    j["exponent"] = tv.exponent;
    j["tail_bound"] = tv.tail_bound;
    if (want_grad) {
        json g = json::array();
        for (const cplx& v : *tv.gradient) g.push_back(json::array({v.real(), v.imag()}));
        j["gradient"] = g;
    }
    std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!json_out.empty()) write_file(json_out, text);
    return kExitPass;
}

void print_report_line(const VerificationReport& rep) {
    std::cout << (rep.pass ? "PASS" : "FAIL") << "  " << rep.task.check
              << "  max residual " << rep.max_residual;
    if (!rep.error.empty()) std::cout << "  error: " << rep.error;
    std::cout << "\n";
    for (const auto& [k, v] : rep.constants) {
        std::cout << "      " << k << " = " << v.real();
        if (v.imag() != 0.0) std::cout << (v.imag() > 0 ? " + " : " - ") << std::abs(v.imag()) << "i";
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of theta-function identities on moduli of rank-one local systems"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ theta
    auto* theta_cmd = app.add_subcommand("theta", "evaluate the Riemann theta function");
    std::string omega_file, tau_text, z_text, char_text, json_out;
    double tol = 1e-12;
    bool want_grad = false;
    theta_cmd->add_option("--omega", omega_file, "period matrix JSON file");
    theta_cmd->add_option("--tau", tau_text, "genus-1 modulus re,im");
    theta_cmd->add_option("--z", z_text, "argument; components re,im separated by ';'")->required();
    theta_cmd->add_option("--char", char_text, "characteristic a1,..,ag;b1,..,bg");
    theta_cmd->add_option("--tol", tol, "certified tail bound target");
    theta_cmd->add_flag("--grad", want_grad, "include the gradient");
    theta_cmd->add_option("--json-out", json_out, "also write the result to a file");

    // ----------------------------------------------------------------- verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification check");
    std::string check, v_omega_file, v_tau, v_lambda, v_json_out, v_task_file;
    int grid = 5;
    double v_tol = 0.0;
    std::uint64_t seed = 1;
    bool slow = false, serial = false;
    verify_cmd->add_option("check", check, "one of: reciprocity reciprocity1 reciprocity2 flatness curvature twistor torsion-oracle gm-curvature all");
    verify_cmd->add_option("--omega", v_omega_file, "period matrix JSON file");
    verify_cmd->add_option("--tau", v_tau, "genus-1 modulus re,im");
    verify_cmd->add_option("--grid", grid, "grid size per axis");
    verify_cmd->add_option("--tol", v_tol, "pass threshold (0 = per-check default)");
    verify_cmd->add_option("--seed", seed, "deterministic sampling seed");
    verify_cmd->add_option("--lambda", v_lambda, "twistor chart coordinate re,im");
    verify_cmd->add_flag("--slow", slow, "include the slow spectral oracle in 'all'");
    verify_cmd->add_flag("--serial", serial, "disable the OpenMP grid parallelism");
    verify_cmd->add_option("--task", v_task_file, "JSON task file (overrides the flags)");
    verify_cmd->add_option("--json-out", v_json_out, "write the report to a file");

    // ----------------------------------------------------------------- report
    auto* report_cmd = app.add_subcommand("report", "merge report files");
    std::vector<std::string> merge_files;
    std::string r_json_out;
    report_cmd->add_option("--merge", merge_files, "report JSON files")->expected(-1);
    report_cmd->add_option("--json-out", r_json_out, "write the merged report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitBadInput;
    }

    try {
        if (theta_cmd->parsed())
            return run_theta(omega_file, tau_text, z_text, char_text, tol, want_grad, json_out);

        if (verify_cmd->parsed()) {
            std::vector<VerificationTask> tasks;
            if (!v_task_file.empty()) {
                tasks = tasks_from_json(read_file(v_task_file));
            } else {
                std::vector<std::string> names;
                if (check == "all" || check.empty()) {
                    names = known_checks();
                    if (!slow)
                        names.erase(std::remove(names.begin(), names.end(), "torsion-oracle"),
                                    names.end());
                } else {
                    names.push_back(check);
                }
                for (const std::string& name : names) {
                    VerificationTask t;
                    t.check = name;
                    if (!v_omega_file.empty())
                        t.omega = omega_from_json(read_file(v_omega_file));
                    else if (!v_tau.empty()) {
                        t.omega = ComplexMat(1);
                        t.omega(0, 0) = parse_complex(v_tau);
                    }
                    t.grid = grid;
                    t.tol = v_tol;
                    t.seed = seed;
                    if (!v_lambda.empty()) t.lambda = parse_complex(v_lambda);
                    t.slow = slow;
                    tasks.push_back(std::move(t));
                }
            }
            std::vector<VerificationReport> reps = run_suite(tasks, !serial);
            for (const VerificationReport& rep : reps) print_report_line(rep);
            if (!v_json_out.empty()) write_file(v_json_out, suite_to_json(reps));
            return suite_exit_code(reps);
        }

        if (report_cmd->parsed()) {
            if (merge_files.empty()) throw Error("InvalidInput", "--merge needs at least one file");
            std::vector<std::string> payloads;
            for (const std::string& f : merge_files) payloads.push_back(read_file(f));
            std::string merged = merge_report_files(payloads);
            std::cout << merged << "\n";
            if (!r_json_out.empty()) write_file(r_json_out, merged);
            return kExitPass;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
