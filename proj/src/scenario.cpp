#include "gthermo/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "gthermo/fock.hpp"
#include "gthermo/predictors.hpp"
#include "gthermo/thermo.hpp"
#include "gthermo/workx.hpp"

namespace gthermo {

namespace detail {
extern const char* const scenario_schema_text;
}

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ValidationError(where + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& j, const std::string& where, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where + "." + key + " must be finite");
    return x;
}

cplx complex_value(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) return {0.0, 0.0};
    const std::string path = where + "." + key;
    require_keys(j.at(key), path, {"re", "im"});
    return {number(j.at(key), path, "re", 0.0), number(j.at(key), path, "im", 0.0)};
}

std::string text(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ValidationError(where + "." + key + " is required");
    if (!j.at(key).is_string()) throw ValidationError(where + "." + key + " must be a string");
    return j.at(key).get<std::string>();
}

SingleModeSpec parse_mode(const json& j, const std::string& where) {
    require_keys(j, where, {"n", "r", "theta", "alpha", "omega"});
    SingleModeSpec m;
    m.n = number(j, where, "n", 0.0);
    m.r = number(j, where, "r", 0.0);
    m.theta = number(j, where, "theta", 0.0);
    m.alpha = complex_value(j, where, "alpha");
    m.omega = number(j, where, "omega", 1.0);
    return m;
}

StateRecipe parse_state(const json& j) {
    const std::string family = text(j, "state", "family");
    if (family == "product") {
        require_keys(j, "state", {"family", "mode_a", "mode_b"});
        ProductSpec p;
        if (j.contains("mode_a")) p.a = parse_mode(j.at("mode_a"), "state.mode_a");
        if (j.contains("mode_b")) p.b = parse_mode(j.at("mode_b"), "state.mode_b");
        return p;
    }
    require_keys(j, "state",
                 {"family", "n_a", "n_b", "c", "r", "alpha", "delta", "omega_a", "omega_b", "custom_eps"});
    CorrelatedSpec c;
    if (family == "type1") c.family = CorrelationFamily::TypeI;
    else if (family == "type2") c.family = CorrelationFamily::TypeII;
    else if (family == "tmsv") c.family = CorrelationFamily::Tmsv;
    else if (family == "custom") c.family = CorrelationFamily::Custom;
    else throw ValidationError("state.family must be one of product, type1, type2, tmsv, custom");
    c.n_a = number(j, "state", "n_a", 0.0);
    c.n_b = number(j, "state", "n_b", 0.0);
    c.c = number(j, "state", "c", 0.0);
    c.r = number(j, "state", "r", 0.0);
    c.alpha = complex_value(j, "state", "alpha");
    c.delta = complex_value(j, "state", "delta");
    c.omega_a = number(j, "state", "omega_a", 1.0);
    c.omega_b = number(j, "state", "omega_b", 1.0);
    if (j.contains("custom_eps")) {
        const json& e = j.at("custom_eps");
        if (!e.is_array() || e.size() != 2 || !e[0].is_array() || !e[1].is_array() || e[0].size() != 2 ||
            e[1].size() != 2) {
            throw ValidationError("state.custom_eps must be a 2x2 array of numbers");
        }
        Mat2 m;
        for (int r = 0; r < 2; ++r) {
            for (int k = 0; k < 2; ++k) {
                if (!e[r][k].is_number()) throw ValidationError("state.custom_eps must be a 2x2 array of numbers");
                m(r, k) = e[r][k].get<double>();
            }
        }
        c.custom_eps = m;
    }
    if (c.family == CorrelationFamily::Custom && !c.custom_eps) {
        throw ValidationError("state.custom_eps is required for the custom family");
    }
    return c;
}

BilinearTransform parse_transform(const json& j) {
    require_keys(j, "transform", {"kind", "angle", "phase"});
    const std::string kind = text(j, "transform", "kind");
    const double angle = number(j, "transform", "angle", 0.0);
    const double phase = number(j, "transform", "phase", 0.0);
    try {
        if (kind == "fc") return BilinearTransform::fc(angle, phase);
        if (kind == "pa") return BilinearTransform::pa(angle, phase);
    } catch (const Error& e) {
        throw ValidationError(std::string("transform: ") + e.what());
    }
    throw ValidationError("transform.kind must be fc or pa");
}

const std::set<std::string>& sweep_axes() {
    static const std::set<std::string> axes{"theta", "phi", "r", "psi", "c", "N_A", "N_B", "delta_abs"};
    return axes;
}

SweepSpec parse_sweep(const json& j) {
    require_keys(j, "sweep", {"parameter", "from", "to", "steps"});
    SweepSpec s;
    s.parameter = text(j, "sweep", "parameter");
    if (!sweep_axes().count(s.parameter)) throw ValidationError("sweep.parameter '" + s.parameter + "' is not a sweep axis");
    s.from = number(j, "sweep", "from", 0.0);
    s.to = number(j, "sweep", "to", 0.0);
    if (!j.contains("steps") || !j.at("steps").is_number_integer()) throw ValidationError("sweep.steps must be an integer");
    s.steps = j.at("steps").get<int>();
    if (s.steps < 1) throw ValidationError("sweep.steps must be at least 1");
    return s;
}

VerifySpec parse_verify(const json& j) {
    require_keys(j, "verify", {"mode", "predictor", "reference_threshold"});
    VerifySpec v;
    const std::string mode = text(j, "verify", "mode");
    if (mode == "closed_form") v.mode = VerifyMode::ClosedForm;
    else if (mode == "fock") v.mode = VerifyMode::Fock;
    else throw ValidationError("verify.mode must be closed_form or fock");
    if (j.contains("predictor")) v.predictor = text(j, "verify", "predictor");
    if (j.contains("reference_threshold")) v.reference_threshold = number(j, "verify", "reference_threshold", 0.0);
    if (v.mode == VerifyMode::ClosedForm && v.predictor.empty()) {
        throw ValidationError("verify.predictor is required for closed_form verification");
    }
    return v;
}

std::string fmt(double v) { return format_number(v); }

json transform_json(const BilinearTransform& t) {
    return {{"kind", t.kind == TransformKind::FrequencyConverter ? "fc" : "pa"}, {"angle", t.angle}, {"phase", t.phase}};
}

void require_identities(const ThermoReport& r, double tolerance, const std::string& where) {
    const auto bad = report_violations(r, tolerance);
    if (bad.empty()) return;
    std::string msg = where + ": ledger identity failed:";
    for (const auto& b : bad) msg += " [" + b + "]";
    throw NumericalDomain(msg);
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

Scenario parse_scenario(const json& doc) {
    require_keys(doc, "scenario", {"name", "state", "transform", "sweep", "verify", "extraction"});
    Scenario s;
    if (doc.contains("name")) s.name = text(doc, "scenario", "name");
    if (!doc.contains("state")) throw ValidationError("scenario.state is required");
    s.state = parse_state(doc.at("state"));
    if (doc.contains("transform")) s.transform = parse_transform(doc.at("transform"));
    if (doc.contains("sweep")) s.sweep = parse_sweep(doc.at("sweep"));
    if (doc.contains("verify")) s.verify = parse_verify(doc.at("verify"));
    if (doc.contains("extraction")) {
        if (!doc.at("extraction").is_boolean()) throw ValidationError("scenario.extraction must be a boolean");
        s.extraction = doc.at("extraction").get<bool>();
    }
    try {
        make_state(s.state);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain) throw ValidationError(std::string("state: ") + e.what());
        throw;
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    std::string out(buf, res.ptr);
    if (out == "-0") return "0";
    return out;
}

Scenario with_parameter(const Scenario& s, std::string_view axis, double value) {
    Scenario out = s;
    const bool fc = s.transform.kind == TransformKind::FrequencyConverter;
    auto need = [&](bool ok, const char* why) {
        if (!ok) throw ValidationError("sweep axis '" + std::string(axis) + "' " + why);
    };
    try {
        if (axis == "theta" || axis == "phi") {
            need(fc, "requires a frequency-converter transform");
            out.transform = axis == "theta" ? BilinearTransform::fc(value, s.transform.phase)
                                            : BilinearTransform::fc(s.transform.angle, value);
            return out;
        }
        if (axis == "r" || axis == "psi") {
            need(!fc, "requires a parametric-amplifier transform");
            out.transform = axis == "r" ? BilinearTransform::pa(value, s.transform.phase)
                                        : BilinearTransform::pa(s.transform.angle, value);
            return out;
        }
    } catch (const DomainError& e) {
        throw ValidationError(std::string("sweep value out of range: ") + e.what());
    }
    if (auto* p = std::get_if<ProductSpec>(&out.state)) {
        if (axis == "N_A") p->a.n = value;
        else if (axis == "N_B") p->b.n = value;
        else if (axis == "delta_abs") p->b.alpha = std::polar(value, std::abs(p->b.alpha) > 0 ? std::arg(p->b.alpha) : 0.0);
        else need(false, "is not defined for product states");
    } else {
        auto& c = std::get<CorrelatedSpec>(out.state);
        if (axis == "N_A") c.n_a = value;
        else if (axis == "N_B") c.n_b = value;
        else if (axis == "c") c.c = value;
        else if (axis == "delta_abs") c.delta = std::polar(value, std::abs(c.delta) > 0 ? std::arg(c.delta) : 0.0);
        else need(false, "is not defined for this state");
    }
    if (value < 0.0 && axis != "c") throw ValidationError("sweep axis '" + std::string(axis) + "' must be non-negative");
    return out;
}

json report_to_json(const ThermoReport& r) {
    return {{"dE_A", r.dE_A},
            {"dE_B", r.dE_B},
            {"W", r.W},
            {"dQ", r.dQ},
            {"dW_A", r.dW_A},
            {"dB_A", r.dB_A},
            {"dB_B", r.dB_B},
            {"dF_A", r.dF_A},
            {"dF_B", r.dF_B},
            {"T_A_in", r.T_A_in},
            {"T_B_in", r.T_B_in},
            {"T_A_out", r.T_A_out},
            {"T_B_out", r.T_B_out},
            {"dS_A", r.dS_A},
            {"dS_B", r.dS_B},
            {"dS_AB", r.dS_AB},
            {"dI", r.dI},
            {"I2_in", r.I2_in},
            {"I2_out", r.I2_out},
            {"dI2", r.dI2},
            {"entangled_in", r.entangled_in},
            {"entangled_out", r.entangled_out},
            {"clausius_residual", r.clausius_residual},
            {"net_gain", r.net_gain()}};
}

json run_document(const Scenario& s, double tolerance) {
    const TwoModeState state = make_state(s.state);
    const ThermoReport r = ledger(s.transform, state);
    require_identities(r, tolerance, "run");
    json doc;
    doc["scenario"] = s.name;
    doc["transform"] = transform_json(s.transform);
    doc["report"] = report_to_json(r);
    doc["clausius_temperatures"] = "initial";
    if (s.extraction) {
        const ExtractionResult x = net_work(s.transform, state);
        doc["extraction"] = {{"net_gain", x.net_gain}, {"dF_A", x.dF_A}, {"W", x.W},
                             {"dE_B", x.dE_B},         {"dB_A", x.dB_A}, {"argmax", transform_json(x.argmax)}};
    }
    return doc;
}

void write_sweep_csv(std::ostream& out, const Scenario& s, const SweepSpec& sweep, double tolerance) {
    if (!sweep_axes().count(sweep.parameter)) {
        throw ValidationError("sweep axis '" + sweep.parameter + "' is not one of theta, phi, r, psi, c, N_A, N_B, delta_abs");
    }
    if (sweep.steps < 1) throw ValidationError("sweep steps must be at least 1");
    std::ostringstream body;
    body << sweep.parameter
         << ",dE_A,dE_B,W,dQ,dW_A,netW,I2_in,I2_out,entangled_in,entangled_out,T_A_in,T_B_in,T_A_out,T_B_out\n";
    for (int k = 0; k < sweep.steps; ++k) {
        const double x = k == 0                 ? sweep.from
                         : k == sweep.steps - 1 ? sweep.to
                                                : sweep.from + (sweep.to - sweep.from) * (double(k) / (sweep.steps - 1));
        const Scenario point = with_parameter(s, sweep.parameter, x);
        const ThermoReport r = ledger(point.transform, make_state(point.state));
        require_identities(r, tolerance, "sweep row " + std::to_string(k));
        body << fmt(x) << ',' << fmt(r.dE_A) << ',' << fmt(r.dE_B) << ',' << fmt(r.W) << ',' << fmt(r.dQ) << ','
             << fmt(r.dW_A) << ',' << fmt(r.net_gain()) << ',' << fmt(r.I2_in) << ',' << fmt(r.I2_out) << ','
             << (r.entangled_in ? 1 : 0) << ',' << (r.entangled_out ? 1 : 0) << ',' << fmt(r.T_A_in) << ','
             << fmt(r.T_B_in) << ',' << fmt(r.T_A_out) << ',' << fmt(r.T_B_out) << '\n';
    }
    out << body.str();
}

VerifyOutcome verify_scenario(const Scenario& s, VerifyMode mode, double tolerance) {
    std::ostringstream os;
    os << std::setprecision(12);
    VerifyOutcome outcome;
    const TwoModeState state = make_state(s.state);
    const ThermoReport g = ledger(s.transform, state);
    require_identities(g, tolerance, "verify");

    if (mode == VerifyMode::ClosedForm) {
        if (!s.verify || s.verify->predictor.empty()) {
            throw ValidationError("closed_form verification needs verify.predictor in the scenario");
        }
        const Predictor& p = find_predictor(s.verify->predictor);
        const PredictorInput in = predictor_input(s.state, s.transform);
        if (auto why = p.check(in); !why.empty()) {
            throw ValidationError("scenario is outside the validity region of '" + p.id + "': " + why);
        }
        const Prediction pr = p.predict(in);
        outcome.passed = true;
        os << "predictor," << p.id << '\n' << "quantity,closed_form,ledger,abs_diff,status\n";
        auto row = [&](const char* name, const std::optional<double>& v, double ledger_value) {
            if (!v) return;
            const bool ok = close_rel(*v, ledger_value, 1e-9);
            outcome.passed = outcome.passed && ok;
            os << name << ',' << fmt(*v) << ',' << fmt(ledger_value) << ',' << fmt(std::abs(*v - ledger_value)) << ','
               << (ok ? "PASS" : "FAIL") << '\n';
        };
        row("dE_A", pr.dE_A, g.dE_A);
        row("dQ", pr.dQ, g.dQ);
        row("dW_A", pr.dW_A, g.dW_A);
        row("net_gain", pr.net_gain, g.net_gain());

        if (in.family == StateFamily::TypeI && in.transform.kind == TransformKind::ParametricAmplifier &&
            in.transform.angle > 0.0) {
            const double threshold = pa_type1_cooling_threshold(in.n_a, in.n_b, in.transform.angle);
            const double c_max = type1_bound(in.n_a, in.n_b);
            os << "cooling_threshold," << fmt(threshold) << '\n' << "c_M," << fmt(c_max) << '\n';
            os << "window_admissible," << (threshold <= c_max ? "yes" : "no") << '\n';
            if (s.verify->reference_threshold) {
                const double ref = *s.verify->reference_threshold;
                os << "reference_threshold," << fmt(ref) << '\n';
                os << "reference_agreement," << (std::abs(threshold - ref) <= 5e-3 ? "agree" : "disagree") << '\n';
            }
        } else if (in.family == StateFamily::TypeII && in.transform.kind == TransformKind::FrequencyConverter &&
                   in.transform.angle > 0.0 && in.transform.angle < std::numbers::pi / 2) {
            const double threshold = fc_type2_cooling_threshold(in.n_a, in.n_b, in.transform.angle);
            os << "cooling_threshold," << fmt(threshold) << '\n' << "c_M," << fmt(type2_bound(in.n_a, in.n_b)) << '\n';
        }
    } else {
        const OracleResult f = oracle_report(s.transform, s.state);
        const TwoModeState out_state = apply(s.transform, state);
        const double sa_in = entropy_vn_single(state.cov().block_a());
        const double sb_in = entropy_vn_single(state.cov().block_b());
        const double sa_out = entropy_vn_single(out_state.cov().block_a());
        const double sb_out = entropy_vn_single(out_state.cov().block_b());
        os << "fock_dim," << f.dim << '\n' << "fock_tail," << fmt(f.tail) << '\n';
        os << "quantity,gaussian,fock,abs_diff\n";
        double max_diff = 0.0;
        auto row = [&](const char* name, double a, double b) {
            max_diff = std::max(max_diff, std::abs(a - b));
            os << name << ',' << fmt(a) << ',' << fmt(b) << ',' << fmt(std::abs(a - b)) << '\n';
        };
        row("dQ", g.dQ, f.report.dQ);
        row("dE_A", g.dE_A, f.report.dE_A);
        row("dE_B", g.dE_B, f.report.dE_B);
        row("dW_A", g.dW_A, f.report.dW_A);
        row("S_A_in", sa_in, f.S_A_in);
        row("S_B_in", sb_in, f.S_B_in);
        row("S_A_out", sa_out, f.S_A_out);
        row("S_B_out", sb_out, f.S_B_out);
        row("dI2", g.dI2, f.report.dI2);
        row("T_B_in", g.T_B_in, f.report.T_B_in);
        row("T_B_out", g.T_B_out, f.report.T_B_out);
        const bool heat_ok = std::abs(g.dQ - f.report.dQ) <= 1e-5 * std::max(1.0, std::abs(g.dQ));
        const double entropy_diff = std::max({std::abs(sa_in - f.S_A_in), std::abs(sb_in - f.S_B_in),
                                              std::abs(sa_out - f.S_A_out), std::abs(sb_out - f.S_B_out)});
        const bool entropy_ok = entropy_diff <= 1e-6;
        os << "max_abs_diff," << fmt(max_diff) << '\n';
        if (f.ppt_evaluated) {
            os << "entangled_in," << g.entangled_in << ',' << f.report.entangled_in << '\n';
            os << "entangled_out," << g.entangled_out << ',' << f.report.entangled_out << '\n';
        }
        outcome.passed = heat_ok && entropy_ok;
    }
    os << "status," << (outcome.passed ? "PASS" : "FAIL") << '\n';
    outcome.text = os.str();
    return outcome;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPhysical:
        case ErrorKind::NumericalDomain:
        case ErrorKind::CorrelationBound:
            return 3;
        case ErrorKind::TruncationOverflow:
            return 4;
        default:
            return 2;
    }
}

std::string_view scenario_schema() { return detail::scenario_schema_text; }

}  // namespace gthermo
