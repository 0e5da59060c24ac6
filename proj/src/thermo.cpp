#include "gthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

bool close(double x, double y, double tolerance, double scale = 1.0) {
    return std::abs(x - y) <= tolerance * std::max({scale, std::abs(x), std::abs(y)});
}

double temperature_of(const CovMat2& s, double omega) { return intrinsic_temperature(thermal_photons(s), omega); }

void require_physical(const CovMat2& s, const char* what) {
    if (!s.is_physical()) throw NonPhysical(std::string(what) + ": det σ < 1/4");
}

}  // namespace

double internal_energy(const CovMat2& s, const Vec2& mean, double omega) {
    require_physical(s, "internal_energy");
    return 0.5 * omega * (s.trace() + mean.squaredNorm());
}

double bound_energy(const CovMat2& s, double omega) {
    require_physical(s, "bound_energy");
    return omega * std::sqrt(s.det());
}

EnergyBreakdown free_energy(const CovMat2& s, const Vec2& mean, double omega) {
    const double e = internal_energy(s, mean, omega);
    const double b = bound_energy(s, omega);
    return {e, b, e - b};
}

double heat_from_dets(const CovMat2& before, const CovMat2& after, double omega_b) {
    return bound_energy(after, omega_b) - bound_energy(before, omega_b);
}

double heat_from_entropies(double s_before, double s_after, double omega_b) {
    return omega_b * (g_inv(s_after) - g_inv(s_before));
}

ThermoReport ledger(const BilinearTransform& t, const TwoModeState& s) {
    const Symplectic4 gam = symplectic(t);
    const TwoModeState out = apply(gam, s);
    const CovMat2 sa = s.cov().block_a();
    const CovMat2 sb = s.cov().block_b();
    const CovMat2 sa2 = out.cov().block_a();
    const CovMat2 sb2 = out.cov().block_b();
    const Mat2 eps = s.cov().corr();
    const double wa = s.omega_a();
    const double wb = s.omega_b();

    ThermoReport r;
    r.dE_A = internal_energy(sa2, out.mean_a(), wa) - internal_energy(sa, s.mean_a(), wa);
    r.dE_B = internal_energy(sb2, out.mean_b(), wb) - internal_energy(sb, s.mean_b(), wb);

    // Block-form cross-checks of the system energy and the final bath covariance.
    const Mat2 a = gam.a(), b = gam.b(), c = gam.c(), d = gam.d();
    const Mat2 sigma_a_blocks = a * sa.matrix() * a.transpose() + d * sb.matrix() * d.transpose() +
                                a * eps * d.transpose() + d * eps.transpose() * a.transpose();
    const double dE_A_blocks = 0.5 * wa *
                               (sigma_a_blocks.trace() + (a * s.mean_a() + d * s.mean_b()).squaredNorm() -
                                s.mean_a().squaredNorm() - sa.trace());
    const Mat2 sigma_b_blocks = b * sb.matrix() * b.transpose() + c * sa.matrix() * c.transpose() +
                                c * eps * b.transpose() + b * eps.transpose() * c.transpose();
    const double scale = std::max(1.0, out.cov().matrix().cwiseAbs().maxCoeff());
    if (!close(r.dE_A, dE_A_blocks, 1e3 * tol::num, wa * scale) ||
        (sigma_b_blocks - sb2.matrix()).cwiseAbs().maxCoeff() > 1e3 * tol::num * scale) {
        throw std::logic_error("ledger: block formulas disagree with the transformed state");
    }

    r.W = r.dE_A + r.dE_B;
    r.dQ = heat_from_dets(sb, CovMat2(sigma_b_blocks), wb);
    r.dB_A = bound_energy(sa2, wa) - bound_energy(sa, wa);
    r.dB_B = bound_energy(sb2, wb) - bound_energy(sb, wb);
    r.dF_A = r.dE_A - r.dB_A;
    r.dF_B = r.dE_B - r.dB_B;
    r.dW_A = r.W - r.dF_B;

    r.T_A_in = temperature_of(sa, wa);
    r.T_B_in = temperature_of(sb, wb);
    r.T_A_out = temperature_of(sa2, wa);
    r.T_B_out = temperature_of(sb2, wb);

    const double s_a = entropy_vn_single(sa), s_b = entropy_vn_single(sb);
    const double s_a2 = entropy_vn_single(sa2), s_b2 = entropy_vn_single(sb2);
    const double s_ab = entropy_vn_two_mode(s.cov()), s_ab2 = entropy_vn_two_mode(out.cov());
    r.dS_A = s_a2 - s_a;
    r.dS_B = s_b2 - s_b;
    r.dS_AB = s_ab2 - s_ab;
    r.dI = (s_a2 + s_b2 - s_ab2) - (s_a + s_b - s_ab);

    r.I2_in = renyi2_mutual_information(s.cov());
    r.I2_out = renyi2_mutual_information(out.cov());
    r.dI2 = r.I2_out - r.I2_in;
    r.entangled_in = is_entangled(s.cov());
    r.entangled_out = is_entangled(out.cov());
    r.clausius_residual = clausius_residual(r, r.dI);
    return r;
}

double clausius_residual(const ThermoReport& r, double dI) {
    return (r.T_B_in - r.T_A_in) * r.dS_A - (r.dF_A + r.dF_B + r.T_B_in * dI - r.W);
}

std::vector<std::string> report_violations(const ThermoReport& r, double tolerance) {
    std::vector<std::string> bad;
    const double energy_scale = std::max({1.0, std::abs(r.dE_A), std::abs(r.dE_B), std::abs(r.dB_A), std::abs(r.dB_B)});
    if (!close(r.dW_A, r.dE_A + r.dQ, tolerance, energy_scale)) bad.emplace_back("dW_A = dE_A + dQ");
    if (!close(r.dW_A, r.W - r.dF_B, tolerance, energy_scale)) bad.emplace_back("dW_A = W - dF_B");
    if (!close(r.dQ, r.dB_B, tolerance, energy_scale)) bad.emplace_back("dQ = dB_B");
    if (!close(r.dS_A + r.dS_B, r.dI, tolerance, std::max({1.0, std::abs(r.dS_A), std::abs(r.dS_B)}))) {
        bad.emplace_back("dS_A + dS_B = dI");
    }
    const double clausius_scale = std::max({1.0, std::abs(r.W), std::abs(r.dF_A), std::abs(r.dF_B),
                                            std::abs(r.T_B_in * r.dI), std::abs((r.T_B_in - r.T_A_in) * r.dS_A)});
    if (r.clausius_residual < -tolerance * clausius_scale) bad.emplace_back("clausius_residual >= 0");
    return bad;
}

std::pair<double, double> renyi_bound_energy_relation(const TwoModeState& before, const TwoModeState& after) {
    const double wb = before.omega_b();
    const double lhs = bound_energy(after.cov().block_b(), wb);
    // ΔI₂ uses the full two-mode determinants, so the relation also tests det σ_AB conservation.
    const double half_log_ratio = 0.5 * std::log(after.cov().block_a().det() * after.cov().block_b().det() /
                                                 after.cov().det()) -
                                  0.5 * std::log(before.cov().block_a().det() * before.cov().block_b().det() /
                                                 before.cov().det());
    const double ds2_a = renyi2_entropy(after.cov().block_a()) - renyi2_entropy(before.cov().block_a());
    const double rhs = std::exp(half_log_ratio - ds2_a) * bound_energy(before.cov().block_b(), wb);
    return {lhs, rhs};
}

double infinitesimal_clausius_check(TransformKind kind, double phase, const TwoModeState& s, double h) {
    const BilinearTransform t =
        kind == TransformKind::FrequencyConverter ? BilinearTransform::fc(h, phase) : BilinearTransform::pa(h, phase);
    const ThermoReport r = ledger(t, s);
    if (r.T_B_in == 0.0) throw DegenerateEntropy("infinitesimal Clausius ratio undefined for a pure bath (T_B = 0)");
    if (std::abs(r.dS_B) < 1e-14) {
        std::ostringstream os;
        os << "bath entropy change " << r.dS_B << " underflows at h = " << h;
        throw DegenerateEntropy(os.str());
    }
    return std::abs(r.dQ / r.dS_B - r.T_B_in);
}

}  // namespace gthermo
