#include "gthermo/workx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gthermo/errors.hpp"
#include "gthermo/states.hpp"

namespace gthermo {

namespace {

constexpr double pi = std::numbers::pi;

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * std::max(1.0, scale); }

BilinearTransform make(TransformKind kind, double angle, double phase) {
    return kind == TransformKind::FrequencyConverter ? BilinearTransform::fc(angle, phase)
                                                     : BilinearTransform::pa(angle, phase);
}

double tie_margin(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

}  // namespace

ExtractionResult net_work(const BilinearTransform& t, const TwoModeState& s) {
    if (s.mean_a().norm() > 1e-10) {
        throw CoherentSystemSignal("net work requires a system mode without coherent signal (alpha = 0)");
    }
    const ThermoReport r = ledger(t, s);
    ExtractionResult out;
    out.dF_A = r.dF_A;
    out.W = r.W;
    out.dE_B = r.dE_B;
    out.dB_A = r.dB_A;
    out.net_gain = r.dF_A - r.W;
    out.argmax = t;

    const double scale = std::abs(r.dE_A) + std::abs(r.dE_B) + std::abs(r.dB_A);
    if (!close(out.net_gain, -(r.dE_B + r.dB_A), scale)) {
        throw std::logic_error("net gain disagrees with -(dE_B + dB_A)");
    }
    const double ratio = s.omega_b() / s.omega_a();
    const double expected = t.kind == TransformKind::FrequencyConverter ? -ratio * r.dE_A : ratio * r.dE_A;
    if (!close(r.dE_B, expected, scale)) {
        throw std::logic_error("bath energy change violates the photon-number constraint of the transform");
    }
    return out;
}

TypeIOptimum optimal_theta_type1(double n_a, double n_b, double c, double omega_a, double omega_b) {
    if (n_a < 0.0 || n_b < 0.0) throw DomainError("thermal photon numbers must be non-negative");
    if (std::abs(c) > type1_bound(n_a, n_b) + tol::phys) {
        throw CorrelationBoundViolation("|c| <= sqrt(N_A N_B) violated");
    }
    TypeIOptimum out;
    const double dw = omega_b - omega_a;
    const double dn = n_b - n_a;
    if (dw == 0.0) return out;

    const double s = dw > 0.0 ? 1.0 : -1.0;
    out.phi = s * c >= 0.0 ? 0.0 : pi;
    auto gain = [&](double theta) {
        const double sn = std::sin(theta);
        return dw * (sn * sn * dn + std::sin(2.0 * theta) * c * std::cos(out.phi));
    };

    out.theta = 0.5 * std::atan2(2.0 * std::abs(c), -s * dn);
    out.net_gain = std::abs(dw) * (s * dn / 2.0 + std::sqrt(dn * dn / 4.0 + c * c));
    out.feasible = out.net_gain > tie_margin(out.net_gain) * std::abs(dw);
    if (!out.feasible) {
        out.theta = 0.0;
        out.net_gain = 0.0;
    }
    out.theta_principal = dn == 0.0 ? pi / 4.0 : 0.5 * std::atan(2.0 * std::abs(c) / std::abs(dn));
    out.net_gain_principal = gain(out.theta_principal);
    return out;
}

TmsvOptimum tmsv_optimum(double r, double omega_a) {
    if (r < 0.0) throw DomainError("squeezing r must be non-negative");
    const double sh = std::sinh(r);
    return {pi / 4.0, omega_a * sh * sh};
}

PaTypeIIOptimum pa_type2_optimum(double n, double delta_abs2, double omega) {
    if (n < 0.0 || delta_abs2 < 0.0) throw DomainError("N and |delta|^2 must be non-negative");
    const double s = std::sqrt(n * (n + 1.0));
    const double k = 4.0 * n + 2.0 + delta_abs2;
    const double arg = 4.0 * s / k;
    if (arg >= 1.0) throw DomainError("atanh argument reached 1");

    auto gain = [&](double r) {
        return omega * (-0.5 * k * (std::cosh(2.0 * r) - 1.0) + 2.0 * s * std::sinh(2.0 * r));
    };
    PaTypeIIOptimum out;
    out.psi = pi;
    out.r = 0.5 * std::atanh(arg);
    out.net_gain = omega * (k - std::sqrt(k * k - 16.0 * s * s)) / 2.0;
    out.r_stationary_alt = std::atanh(2.0 * s / k);
    out.net_gain_alt = gain(out.r_stationary_alt);
    return out;
}

ExtractionResult numeric_maximize(TransformKind kind, const TwoModeState& s, const MaximizeOptions& opts) {
    const double hi0 = kind == TransformKind::FrequencyConverter ? pi / 2.0 : opts.r_cap;
    const double two_pi = 2.0 * pi;
    const int n = std::max(opts.grid, 2);
    const double step0 = hi0 / (n - 1);
    const double step1 = two_pi / n;

    auto value = [&](double x0, double x1) { return net_work(make(kind, x0, x1), s).net_gain; };

    double best0 = 0.0, best1 = 0.0;
    double best = value(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x0 = i * step0, x1 = j * step1;
            const double v = value(x0, x1);
            if (v > best + tie_margin(best)) {
                best = v;
                best0 = x0;
                best1 = x1;
            }
        }
    }

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    auto refine = [&](auto&& f, double lo, double hi, double current, double current_value) {
        double a = lo, b = hi;
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < opts.golden_iterations && b - a > 1e-13; ++it) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = f(x2);
            }
        }
        const double x = 0.5 * (a + b);
        const double fx = f(x);
        if (fx > current_value + tie_margin(current_value)) return std::pair{x, fx};
        return std::pair{current, current_value};
    };

    double w0 = step0, w1 = step1;
    for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
        auto r0 = refine([&](double x) { return value(x, best1); }, std::max(0.0, best0 - w0),
                         std::min(hi0, best0 + w0), best0, best);
        best0 = r0.first;
        best = r0.second;
        auto r1 = refine(
            [&](double x) { return value(best0, std::fmod(x + two_pi, two_pi)); }, best1 - w1, best1 + w1, best1,
            best);
        best1 = std::fmod(r1.first + two_pi, two_pi);
        best = r1.second;
        w0 *= 0.5;
        w1 *= 0.5;
    }

    ExtractionResult out = net_work(make(kind, best0, best1), s);
    return out;
}

}  // namespace gthermo
