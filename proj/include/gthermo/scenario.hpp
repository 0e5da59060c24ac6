#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gthermo/errors.hpp"
#include "gthermo/states.hpp"
#include "gthermo/thermo.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

struct SweepSpec {
    std::string parameter;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
};

enum class VerifyMode { ClosedForm, Fock };

struct VerifySpec {
    VerifyMode mode = VerifyMode::ClosedForm;
    std::string predictor;
    std::optional<double> reference_threshold;
};

struct Scenario {
    std::string name;
    StateRecipe state;
    BilinearTransform transform;
    std::optional<SweepSpec> sweep;
    std::optional<VerifySpec> verify;
    bool extraction = false;
};

// Strict parser: unknown keys, wrong types and out-of-range values fail with ValidationError.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

std::string_view scenario_schema();

// Twelve significant digits, shortest form, no negative zero, locale independent.
std::string format_number(double v);

// Axis names accepted by sweeps: theta, phi, r, psi, c, N_A, N_B, delta_abs.
Scenario with_parameter(const Scenario& s, std::string_view axis, double value);

nlohmann::json report_to_json(const ThermoReport& r);
nlohmann::json run_document(const Scenario& s, double tolerance);
void write_sweep_csv(std::ostream& out, const Scenario& s, const SweepSpec& sweep, double tolerance);

struct VerifyOutcome {
    std::string text;
    bool passed = false;
};

VerifyOutcome verify_scenario(const Scenario& s, VerifyMode mode, double tolerance);

int exit_code(ErrorKind kind);

}  // namespace gthermo
