#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gthermo/errors.hpp"
#include "gthermo/scenario.hpp"

namespace {

double tolerance_from_env() {
    const char* raw = std::getenv("GTHERMO_TOL");
    if (raw == nullptr || *raw == '\0') return 1e-9;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0)) {
        throw gthermo::ValidationError(std::string("GTHERMO_TOL must be a positive number, got '") + raw + "'");
    }
    return v;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gthermo::ValidationError("cannot write '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode Gaussian quantum thermodynamics: ledgers, sweeps and verification"};
    app.require_subcommand(1);

    std::string file;
    std::string out_path;

    auto* run = app.add_subcommand("run", "Compute the full thermodynamic ledger of a scenario as JSON");
    run->add_option("scenario", file, "Scenario JSON file")->required();
    run->add_option("--out", out_path, "Write to this path instead of stdout");

    std::string axis;
    std::optional<double> from, to;
    std::optional<int> steps;
    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and emit a CSV table");
    sweep->add_option("scenario", file, "Scenario JSON file")->required();
    sweep->add_option("--axis", axis, "theta, phi, r, psi, c, N_A, N_B or delta_abs");
    sweep->add_option("--from", from, "First axis value");
    sweep->add_option("--to", to, "Last axis value");
    sweep->add_option("--steps", steps, "Number of grid points");
    sweep->add_option("--out", out_path, "Write to this path instead of stdout");

    std::string mode;
    auto* verify = app.add_subcommand("verify", "Compare the ledger with a closed-form predictor or the Fock oracle");
    verify->add_option("scenario", file, "Scenario JSON file")->required();
    verify->add_option("--mode", mode, "closed_form or fock")->check(CLI::IsMember({"closed_form", "fock"}));

    app.add_subcommand("schema", "Print the scenario JSON schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const double tol = tolerance_from_env();
        if (app.got_subcommand("schema")) {
            std::cout << gthermo::scenario_schema();
            return 0;
        }
        const gthermo::Scenario scenario = gthermo::load_scenario(file);

        if (app.got_subcommand(run)) {
            emit(gthermo::run_document(scenario, tol).dump(2) + "\n", out_path);
            return 0;
        }
        if (app.got_subcommand(sweep)) {
            gthermo::SweepSpec spec = scenario.sweep.value_or(gthermo::SweepSpec{});
            if (!axis.empty()) spec.parameter = axis;
            if (from) spec.from = *from;
            if (to) spec.to = *to;
            if (steps) spec.steps = *steps;
            if (spec.parameter.empty()) throw gthermo::ValidationError("no sweep axis given (use --axis or a sweep block)");
            std::ostringstream csv;
            gthermo::write_sweep_csv(csv, scenario, spec, tol);
            emit(csv.str(), out_path);
            return 0;
        }
        gthermo::VerifyMode vm;
        if (!mode.empty()) {
            vm = mode == "fock" ? gthermo::VerifyMode::Fock : gthermo::VerifyMode::ClosedForm;
        } else if (scenario.verify) {
            vm = scenario.verify->mode;
        } else {
            throw gthermo::ValidationError("no verification mode given (use --mode or a verify block)");
        }
        const auto outcome = gthermo::verify_scenario(scenario, vm, tol);
        std::cout << outcome.text;
        return outcome.passed ? 0 : 1;
    } catch (const gthermo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return gthermo::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
