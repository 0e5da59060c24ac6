#include "gthermo/predictors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double exact = 1e-12;

double wrap_angle(double x) { return std::remainder(x, 2.0 * pi); }
double nu(double n) { return n + 0.5; }

// Re(α δ* e^{−iφ}) for FC and Re(α δ e^{−iψ}) for PA.
double fc_coherence(const PredictorInput& in) {
    return std::real(in.alpha * std::conj(in.delta) * std::polar(1.0, -in.transform.phase));
}
double pa_coherence(const PredictorInput& in) {
    return std::real(in.alpha * in.delta * std::polar(1.0, -in.transform.phase));
}

struct Trig {
    double s2;   // sin²θ or sinh²r
    double c2;   // cos²θ or cosh²r
    double d2;   // sin 2θ or sinh 2r
};

Trig fc_trig(const PredictorInput& in) {
    const double s = std::sin(in.transform.angle), c = std::cos(in.transform.angle);
    return {s * s, c * c, std::sin(2.0 * in.transform.angle)};
}

Trig pa_trig(const PredictorInput& in) {
    const double s = std::sinh(in.transform.angle), c = std::cosh(in.transform.angle);
    return {s * s, c * c, std::sinh(2.0 * in.transform.angle)};
}

// Composable validity conditions.
using Check = std::function<std::string(const PredictorInput&)>;

Check all_of(std::vector<Check> checks) {
    return [checks = std::move(checks)](const PredictorInput& in) {
        for (const auto& c : checks) {
            if (auto why = c(in); !why.empty()) return why;
        }
        return std::string{};
    };
}

Check family_is(StateFamily f, const char* name) {
    return [f, name](const PredictorInput& in) {
        return in.family == f ? std::string{} : std::string("state family must be ") + name;
    };
}

Check kind_is(TransformKind k) {
    return [k](const PredictorInput& in) {
        if (in.transform.kind == k) return std::string{};
        return std::string(k == TransformKind::FrequencyConverter ? "transform must be a frequency converter"
                                                                  : "transform must be a parametric amplifier");
    };
}

Check holds(std::function<bool(const PredictorInput&)> pred, std::string why) {
    return [pred = std::move(pred), why = std::move(why)](const PredictorInput& in) {
        return pred(in) ? std::string{} : why;
    };
}

Check unsqueezed() {
    return holds([](const PredictorInput& in) { return in.r_a == 0.0 && in.r_b == 0.0; },
                 "inputs must be unsqueezed (r_A = r_B = 0)");
}

Check no_system_signal() {
    return holds([](const PredictorInput& in) { return std::abs(in.alpha) == 0.0; },
                 "system displacement α must vanish");
}

// Samplers.
struct Draw {
    std::mt19937_64& rng;
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    double photons() { return uniform(0.0, 5.0); }
    double squeeze() { return uniform(0.0, 1.2); }
    double phase() { return uniform(0.0, 2.0 * pi); }
    double omega() { return uniform(0.5, 3.0); }
    cplx amplitude() { return {uniform(-1.5, 1.5), uniform(-1.5, 1.5)}; }
    BilinearTransform fc() { return BilinearTransform::fc(uniform(0.0, pi / 2), phase()); }
    BilinearTransform pa() { return BilinearTransform::pa(uniform(0.0, 1.5), phase()); }

    PredictorInput product(bool squeezed) {
        PredictorInput in;
        in.family = StateFamily::Product;
        in.n_a = photons();
        in.n_b = photons();
        if (squeezed) {
            in.r_a = squeeze();
            in.r_b = squeeze();
            in.theta_a = phase();
            in.theta_b = phase();
        }
        in.alpha = amplitude();
        in.delta = amplitude();
        in.omega_a = omega();
        in.omega_b = omega();
        return in;
    }

    PredictorInput correlated(StateFamily f) {
        PredictorInput in;
        in.family = f;
        in.n_a = photons();
        in.n_b = photons();
        const double bound = f == StateFamily::TypeI ? type1_bound(in.n_a, in.n_b) : type2_bound(in.n_a, in.n_b);
        in.c = uniform(-bound, bound);
        in.alpha = amplitude();
        in.delta = amplitude();
        in.omega_a = omega();
        in.omega_b = omega();
        return in;
    }
};

double phase_in_range(double x) {
    double w = std::fmod(x, 2.0 * pi);
    if (w < 0.0) w += 2.0 * pi;
    return w;
}

// Shared closed forms.
double fc_squeezed_energy(const PredictorInput& in) {
    const Trig t = fc_trig(in);
    return in.omega_a * t.s2 *
               (nu(in.n_b) * std::cosh(2.0 * in.r_b) - nu(in.n_a) * std::cosh(2.0 * in.r_a) + std::norm(in.delta) -
                std::norm(in.alpha)) +
           in.omega_a * t.d2 * fc_coherence(in);
}

double fc_squeezed_bath_det(const PredictorInput& in) {
    const Trig t = fc_trig(in);
    const double f = fs_factor(in.r_a, in.r_b, in.theta_a - in.theta_b, in.transform.phase);
    return t.c2 * t.c2 * nu(in.n_b) * nu(in.n_b) + t.s2 * t.s2 * nu(in.n_a) * nu(in.n_a) +
           2.0 * t.s2 * t.c2 * nu(in.n_a) * nu(in.n_b) * f;
}

double pa_squeezed_energy(const PredictorInput& in) {
    const Trig t = pa_trig(in);
    return in.omega_a * t.s2 *
               (nu(in.n_b) * std::cosh(2.0 * in.r_b) + nu(in.n_a) * std::cosh(2.0 * in.r_a) + std::norm(in.delta) +
                std::norm(in.alpha)) +
           in.omega_a * t.d2 * pa_coherence(in);
}

double pa_thermal_energy(const PredictorInput& in) {
    const Trig t = pa_trig(in);
    return in.omega_a * t.s2 * (in.n_a + in.n_b + 1.0 + std::norm(in.delta) + std::norm(in.alpha)) +
           in.omega_a * t.d2 * pa_coherence(in);
}

double fc_thermal_energy(const PredictorInput& in) {
    const Trig t = fc_trig(in);
    return in.omega_a * t.s2 * (in.n_b - in.n_a + std::norm(in.delta) - std::norm(in.alpha)) +
           in.omega_a * t.d2 * fc_coherence(in);
}

std::vector<Predictor> build_registry() {
    std::vector<Predictor> reg;

    reg.push_back({
        "fc_coherent_thermal",
        "displaced thermal product state under a frequency converter",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter), unsqueezed()}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            Prediction p;
            p.dE_A = fc_thermal_energy(in);
            p.dQ = in.omega_b * t.s2 * (in.n_a - in.n_b);
            p.dW_A = (in.omega_a - in.omega_b) * t.s2 * (in.n_b - in.n_a) +
                     in.omega_a * (t.s2 * (std::norm(in.delta) - std::norm(in.alpha)) + t.d2 * fc_coherence(in));
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(false);
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "bs_coherent_thermal",
        "displaced thermal product state under an equal-frequency beam splitter",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter), unsqueezed(),
                holds([](const PredictorInput& in) { return in.omega_a == in.omega_b; },
                      "beam splitter requires omega_A = omega_B")}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            Prediction p;
            p.dW_A = in.omega_a * (t.s2 * (std::norm(in.delta) - std::norm(in.alpha)) + t.d2 * fc_coherence(in));
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(false);
            in.omega_b = in.omega_a;
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "fc_squeezed_product",
        "displaced squeezed thermal product state under a frequency converter",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter)}),
        [](const PredictorInput& in) {
            Prediction p;
            p.dE_A = fc_squeezed_energy(in);
            p.dQ = in.omega_b * (std::sqrt(fc_squeezed_bath_det(in)) - nu(in.n_b));
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "fc_balanced_squeezed",
        "equally squeezed thermal states under a balanced frequency converter with zero phase",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter),
                holds(
                    [](const PredictorInput& in) {
                        return std::abs(in.transform.angle - pi / 4) <= exact && in.transform.phase == 0.0;
                    },
                    "requires theta = pi/4 and phi = 0"),
                holds([](const PredictorInput& in) { return in.r_a == in.r_b; }, "requires r_A = r_B"),
                holds([](const PredictorInput& in) { return std::abs(in.alpha) == 0.0 && std::abs(in.delta) == 0.0; },
                      "requires alpha = delta = 0")}),
        [](const PredictorInput& in) {
            const double ch = std::cosh(2.0 * in.r_a), sh = std::sinh(2.0 * in.r_a);
            const double f = ch * ch - std::cos(in.theta_a - in.theta_b) * sh * sh;
            const double det = 0.25 * nu(in.n_a) * nu(in.n_a) + 0.25 * nu(in.n_b) * nu(in.n_b) +
                               0.5 * nu(in.n_a) * nu(in.n_b) * f;
            Prediction p;
            p.dE_A = 0.5 * in.omega_a * (in.n_b - in.n_a) * ch;
            p.dQ = in.omega_b * (std::sqrt(det) - nu(in.n_b));
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.r_b = in.r_a;
            in.alpha = in.delta = 0.0;
            in.transform = BilinearTransform::fc(pi / 4, 0.0);
            return in;
        },
    });

    reg.push_back({
        "fc_phase_compensated",
        "equally squeezed inputs whose relative squeeze phase matches the converter phase",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter),
                holds([](const PredictorInput& in) { return in.r_a == in.r_b; }, "requires r_A = r_B"),
                holds(
                    [](const PredictorInput& in) {
                        return std::abs(wrap_angle(in.theta_a - in.theta_b - 2.0 * in.transform.phase)) <= 1e-9;
                    },
                    "requires theta_A - theta_B = 2 phi (mod 2 pi)")}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            Prediction p;
            p.dE_A = in.omega_a * t.s2 *
                         ((in.n_b - in.n_a) * std::cosh(2.0 * in.r_a) + std::norm(in.delta) - std::norm(in.alpha)) +
                     in.omega_a * t.d2 * fc_coherence(in);
            p.dQ = in.omega_b * t.s2 * (in.n_a - in.n_b);
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.r_b = in.r_a;
            in.transform = d.fc();
            in.theta_a = phase_in_range(in.theta_b + 2.0 * in.transform.phase);
            return in;
        },
    });

    reg.push_back({
        "fc_equal_purity",
        "squeezed inputs with equal thermal seeds under a frequency converter",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter),
                holds([](const PredictorInput& in) { return in.n_a == in.n_b; }, "requires N_A = N_B")}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            const double f = fs_factor(in.r_a, in.r_b, in.theta_a - in.theta_b, in.transform.phase);
            const double det = nu(in.n_b) * nu(in.n_b) * (1.0 + 2.0 * t.s2 * t.c2 * (f - 1.0));
            Prediction p;
            p.dE_A = fc_squeezed_energy(in);
            p.dQ = in.omega_b * (std::sqrt(det) - nu(in.n_b));
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.n_b = in.n_a;
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "pa_squeezed_product",
        "displaced squeezed thermal product state under a parametric amplifier",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::ParametricAmplifier)}),
        [](const PredictorInput& in) {
            const Trig t = pa_trig(in);
            const double gs = gs_factor(in.r_a, in.r_b, in.theta_a + in.theta_b, in.transform.phase);
            const double det = t.s2 * t.s2 * nu(in.n_a) * nu(in.n_a) + t.c2 * t.c2 * nu(in.n_b) * nu(in.n_b) +
                               2.0 * t.s2 * t.c2 * nu(in.n_a) * nu(in.n_b) * gs;
            Prediction p;
            p.dE_A = pa_squeezed_energy(in);
            p.dQ = in.omega_b * (std::sqrt(det) - nu(in.n_b));
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.transform = d.pa();
            return in;
        },
    });

    reg.push_back({
        "pa_phase_compensated",
        "equally squeezed inputs whose squeeze phases sum to twice the amplifier phase",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::ParametricAmplifier),
                holds([](const PredictorInput& in) { return in.r_a == in.r_b; }, "requires r_A = r_B"),
                holds(
                    [](const PredictorInput& in) {
                        return std::abs(wrap_angle(in.theta_a + in.theta_b - 2.0 * in.transform.phase)) <= 1e-9;
                    },
                    "requires theta_A + theta_B = 2 psi (mod 2 pi)")}),
        [](const PredictorInput& in) {
            const Trig t = pa_trig(in);
            const double total = in.n_a + in.n_b + 1.0;
            const double coherent =
                in.omega_a * t.s2 * (std::norm(in.delta) + std::norm(in.alpha)) + in.omega_a * t.d2 * pa_coherence(in);
            Prediction p;
            p.dQ = in.omega_b * t.s2 * total;
            p.dE_A = in.omega_a * t.s2 * total * std::cosh(2.0 * in.r_a) + coherent;
            p.dW_A = t.s2 * total * (in.omega_a * std::cosh(2.0 * in.r_a) + in.omega_b) + coherent;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(true);
            in.r_b = in.r_a;
            in.transform = d.pa();
            in.theta_a = phase_in_range(2.0 * in.transform.phase - in.theta_b);
            return in;
        },
    });

    reg.push_back({
        "fc_type1",
        "type-I correlated thermal states under a frequency converter",
        all_of({family_is(StateFamily::TypeI, "type1"), kind_is(TransformKind::FrequencyConverter)}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            const double cphi = std::cos(in.transform.phase);
            Prediction p;
            p.dE_A = in.omega_a * t.s2 * (in.n_b - in.n_a + std::norm(in.delta) - std::norm(in.alpha)) +
                     in.omega_a * t.d2 * (in.c * cphi + fc_coherence(in));
            p.dQ = in.omega_b * ((in.n_a - in.n_b) * t.s2 - in.c * t.d2 * cphi);
            p.dW_A = (in.omega_a - in.omega_b) * ((in.n_b - in.n_a) * t.s2 + in.c * t.d2 * cphi) +
                     in.omega_a * (t.s2 * (std::norm(in.delta) - std::norm(in.alpha)) + t.d2 * fc_coherence(in));
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeI);
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "pa_type1",
        "type-I correlated thermal states under a parametric amplifier",
        all_of({family_is(StateFamily::TypeI, "type1"), kind_is(TransformKind::ParametricAmplifier)}),
        [](const PredictorInput& in) {
            const Trig t = pa_trig(in);
            const double x = nu(in.n_a) * t.s2 + nu(in.n_b) * t.c2;
            const double bath = std::sqrt(x * x - in.c * in.c * t.d2 * t.d2);
            Prediction p;
            p.dE_A = pa_thermal_energy(in);
            p.dQ = in.omega_b * bath - in.omega_b * nu(in.n_b);
            p.dW_A = in.omega_a * t.d2 * pa_coherence(in) +
                     in.omega_a * t.s2 * (in.n_a + in.n_b + 1.0 + std::norm(in.delta) + std::norm(in.alpha)) +
                     in.omega_b * bath - in.omega_b * nu(in.n_b);
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeI);
            in.transform = d.pa();
            return in;
        },
    });

    reg.push_back({
        "fc_type2",
        "type-II correlated thermal states under a frequency converter",
        all_of({family_is(StateFamily::TypeII, "type2"), kind_is(TransformKind::FrequencyConverter)}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            const double x = in.n_a * t.s2 + in.n_b * t.c2 + 0.5;
            Prediction p;
            p.dE_A = fc_thermal_energy(in);
            p.dQ = in.omega_b * std::sqrt(x * x - in.c * in.c * t.d2 * t.d2) - in.omega_b * nu(in.n_b);
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeII);
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "pa_type2",
        "type-II correlated thermal states under a parametric amplifier",
        all_of({family_is(StateFamily::TypeII, "type2"), kind_is(TransformKind::ParametricAmplifier)}),
        [](const PredictorInput& in) {
            const Trig t = pa_trig(in);
            const double cpsi = std::cos(in.transform.phase);
            Prediction p;
            p.dE_A = in.omega_a * t.s2 * (in.n_a + in.n_b + 1.0 + std::norm(in.delta) + std::norm(in.alpha)) +
                     in.omega_a * t.d2 * (in.c * cpsi + pa_coherence(in));
            p.dQ = in.omega_b * ((in.n_a + in.n_b + 1.0) * t.s2 + in.c * t.d2 * cpsi);
            p.dW_A = *p.dE_A + *p.dQ;
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeII);
            in.transform = d.pa();
            return in;
        },
    });

    reg.push_back({
        "wx_fc_bath_coherence",
        "net free-energy gain from a displaced thermal bath under a frequency converter",
        all_of({family_is(StateFamily::Product, "product"), kind_is(TransformKind::FrequencyConverter), unsqueezed(),
                no_system_signal()}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            Prediction p;
            p.net_gain = (in.omega_b - in.omega_a) * t.s2 * (in.n_b - in.n_a) + in.omega_b * t.s2 * std::norm(in.delta);
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.product(false);
            in.alpha = 0.0;
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "wx_fc_type1",
        "net free-energy gain from type-I correlations under a frequency converter",
        all_of({family_is(StateFamily::TypeI, "type1"), kind_is(TransformKind::FrequencyConverter),
                no_system_signal()}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            Prediction p;
            p.net_gain = (in.omega_b - in.omega_a) * (t.s2 * (in.n_b - in.n_a) + t.d2 * in.c * std::cos(in.transform.phase)) +
                         in.omega_b * t.s2 * std::norm(in.delta);
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeI);
            in.alpha = 0.0;
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "wx_fc_type2",
        "net free-energy gain from type-II correlations under a frequency converter",
        all_of({family_is(StateFamily::TypeII, "type2"), kind_is(TransformKind::FrequencyConverter),
                no_system_signal()}),
        [](const PredictorInput& in) {
            const Trig t = fc_trig(in);
            const double x = in.n_b * t.s2 + in.n_a * t.c2 + 0.5;
            Prediction p;
            p.net_gain = in.omega_b * t.s2 * (in.n_b - in.n_a + std::norm(in.delta)) + in.omega_a * nu(in.n_a) -
                         in.omega_a * std::sqrt(x * x - in.c * in.c * t.d2 * t.d2);
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeII);
            in.alpha = 0.0;
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "wx_tmsv_fc",
        "net free-energy gain from a two-mode squeezed vacuum under a frequency converter",
        all_of({family_is(StateFamily::Tmsv, "tmsv"), kind_is(TransformKind::FrequencyConverter),
                holds([](const PredictorInput& in) { return std::abs(in.alpha) == 0.0 && std::abs(in.delta) == 0.0; },
                      "requires alpha = delta = 0")}),
        [](const PredictorInput& in) {
            const double ch = std::cosh(2.0 * in.tmsv_r), sh = std::sinh(2.0 * in.tmsv_r);
            const double s = std::sin(2.0 * in.transform.angle);
            Prediction p;
            p.net_gain = in.omega_a * 0.5 * ch - in.omega_a * std::sqrt(0.25 * ch * ch - 0.25 * sh * sh * s * s);
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in;
            in.family = StateFamily::Tmsv;
            in.tmsv_r = d.uniform(0.0, 1.5);
            in.omega_a = d.omega();
            in.omega_b = d.omega();
            in.transform = d.fc();
            return in;
        },
    });

    reg.push_back({
        "wx_pa_type2",
        "net free-energy gain from type-II correlations under a parametric amplifier",
        all_of({family_is(StateFamily::TypeII, "type2"), kind_is(TransformKind::ParametricAmplifier),
                no_system_signal()}),
        [](const PredictorInput& in) {
            const Trig t = pa_trig(in);
            Prediction p;
            p.net_gain = -in.omega_b * t.s2 * std::norm(in.delta) -
                         (in.omega_a + in.omega_b) *
                             ((in.n_a + in.n_b + 1.0) * t.s2 + in.c * t.d2 * std::cos(in.transform.phase));
            return p;
        },
        [](std::mt19937_64& rng) {
            Draw d{rng};
            PredictorInput in = d.correlated(StateFamily::TypeII);
            in.alpha = 0.0;
            in.transform = d.pa();
            return in;
        },
    });

    return reg;
}

}  // namespace

const std::vector<Predictor>& predictor_registry() {
    static const std::vector<Predictor> registry = build_registry();
    return registry;
}

const Predictor& find_predictor(std::string_view id) {
    for (const auto& p : predictor_registry()) {
        if (p.id == id) return p;
    }
    throw UnknownScenario("no closed-form predictor registered as '" + std::string(id) + "'");
}

StateRecipe to_recipe(const PredictorInput& in) {
    if (in.family == StateFamily::Product) {
        return ProductSpec{{in.n_a, in.r_a, in.theta_a, in.alpha, in.omega_a},
                           {in.n_b, in.r_b, in.theta_b, in.delta, in.omega_b}};
    }
    CorrelatedSpec spec;
    spec.family = in.family == StateFamily::TypeI    ? CorrelationFamily::TypeI
                  : in.family == StateFamily::TypeII ? CorrelationFamily::TypeII
                                                     : CorrelationFamily::Tmsv;
    spec.n_a = in.n_a;
    spec.n_b = in.n_b;
    spec.c = in.c;
    spec.r = in.tmsv_r;
    spec.alpha = in.alpha;
    spec.delta = in.delta;
    spec.omega_a = in.omega_a;
    spec.omega_b = in.omega_b;
    return spec;
}

TwoModeState build_state(const PredictorInput& in) { return make_state(to_recipe(in)); }

PredictorInput predictor_input(const StateRecipe& recipe, const BilinearTransform& t) {
    PredictorInput in;
    in.transform = t;
    if (const auto* p = std::get_if<ProductSpec>(&recipe)) {
        in.family = StateFamily::Product;
        in.n_a = p->a.n;
        in.r_a = p->a.r;
        in.theta_a = p->a.theta;
        in.alpha = p->a.alpha;
        in.omega_a = p->a.omega;
        in.n_b = p->b.n;
        in.r_b = p->b.r;
        in.theta_b = p->b.theta;
        in.delta = p->b.alpha;
        in.omega_b = p->b.omega;
        return in;
    }
    const auto& c = std::get<CorrelatedSpec>(recipe);
    switch (c.family) {
        case CorrelationFamily::TypeI: in.family = StateFamily::TypeI; break;
        case CorrelationFamily::TypeII: in.family = StateFamily::TypeII; break;
        case CorrelationFamily::Tmsv: in.family = StateFamily::Tmsv; break;
        case CorrelationFamily::Custom: throw ValidationError("custom correlations have no closed-form predictor");
    }
    in.n_a = c.n_a;
    in.n_b = c.n_b;
    in.c = c.c;
    in.tmsv_r = c.r;
    in.alpha = c.alpha;
    in.delta = c.delta;
    in.omega_a = c.omega_a;
    in.omega_b = c.omega_b;
    return in;
}

double balanced_fc_cooling_threshold(double n_a, double f_s) {
    return (f_s + 2.0 * n_a * f_s - 3.0) / 6.0 + std::sqrt((3.0 + f_s * f_s) * (1.0 + 2.0 * n_a) * (1.0 + 2.0 * n_a)) / 6.0;
}

double pa_type1_cooling_threshold(double n_a, double n_b, double r) {
    const double x = nu(n_a) * std::sinh(r) * std::sinh(r) + nu(n_b) * std::cosh(r) * std::cosh(r);
    return std::sqrt(x * x - nu(n_b) * nu(n_b)) / std::sinh(2.0 * r);
}

double fc_type2_cooling_threshold(double n_a, double n_b, double theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double x = n_a * s * s + n_b * c * c + 0.5;
    return std::sqrt(x * x - nu(n_b) * nu(n_b)) / std::sin(2.0 * theta);
}

}  // namespace gthermo
