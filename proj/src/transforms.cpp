#include "gthermo/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_phase(double phase) {
    if (!std::isfinite(phase) || phase < 0.0 || phase > two_pi + 1e-12) {
        std::ostringstream os;
        os << "transform phase " << phase << " outside [0, 2π)";
        throw DomainError(os.str());
    }
}

}  // namespace

BilinearTransform BilinearTransform::fc(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12)) {
        std::ostringstream os;
        os << "frequency converter angle θ = " << theta << " outside [0, π/2]";
        throw DomainError(os.str());
    }
    check_phase(phi);
    return {TransformKind::FrequencyConverter, std::min(theta, std::numbers::pi / 2), phi};
}

BilinearTransform BilinearTransform::pa(double r, double psi) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        std::ostringstream os;
        os << "parametric amplifier gain r = " << r << " must be non-negative";
        throw DomainError(os.str());
    }
    check_phase(psi);
    return {TransformKind::ParametricAmplifier, r, psi};
}

bool Symplectic4::is_symplectic(double tolerance) const {
    const Mat4 w = omega4();
    return (m_ * w * m_.transpose() - w).cwiseAbs().maxCoeff() <= tolerance * std::max(1.0, m_.squaredNorm());
}

Symplectic4 Symplectic4::inverse() const {
    // Γ⁻¹ = −Ω Γᵀ Ω for symplectic Γ.
    const Mat4 w = omega4();
    return Symplectic4(-w * m_.transpose() * w);
}

TwoModeState::TwoModeState(const Vec4& mean, const CovMat4& cov, double omega_a, double omega_b)
    : mean_(mean), cov_(cov), omega_a_(omega_a), omega_b_(omega_b) {
    if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw DomainError("mode frequencies must be positive");
    if (!cov.is_physical()) throw NonPhysical("two-mode covariance violates d₋ ≥ 1/2");
}

Mat2 rotation(double phi) {
    Mat2 r;
    r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return r;
}

Mat2 reflection(double psi) {
    Mat2 r;
    r << std::cos(psi), std::sin(psi), std::sin(psi), -std::cos(psi);
    return r;
}

Symplectic4 fc_symplectic(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12)) {
        throw DomainError("fc_symplectic: θ outside [0, π/2]");
    }
    // Symplectic image of a → a cos θ + e^{iφ} b sin θ, b → b cos θ − e^{−iφ} a sin θ.
    const Mat2 r = rotation(phi);
    Mat4 m;
    m.topLeftCorner<2, 2>() = std::cos(theta) * Mat2::Identity();
    m.bottomRightCorner<2, 2>() = std::cos(theta) * Mat2::Identity();
    m.topRightCorner<2, 2>() = std::sin(theta) * r.transpose();
    m.bottomLeftCorner<2, 2>() = -std::sin(theta) * r;
    return Symplectic4(m);
}

Symplectic4 pa_symplectic(double r, double psi) {
    if (!(r >= 0.0)) throw DomainError("pa_symplectic: r must be non-negative");
    const Mat2 rt = reflection(psi);
    Mat4 m;
    m.topLeftCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
    m.bottomRightCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
    m.topRightCorner<2, 2>() = std::sinh(r) * rt;
    m.bottomLeftCorner<2, 2>() = std::sinh(r) * rt;
    return Symplectic4(m);
}

Symplectic4 symplectic(const BilinearTransform& t) {
    return t.kind == TransformKind::FrequencyConverter ? fc_symplectic(t.angle, t.phase)
                                                       : pa_symplectic(t.angle, t.phase);
}

Mat2 squeezer_symplectic(double r, double theta) {
    return std::cosh(r) * Mat2::Identity() + std::sinh(r) * reflection(theta);
}

Symplectic4 local_symplectic(const Mat2& sa, const Mat2& sb) {
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<2, 2>() = sa;
    m.bottomRightCorner<2, 2>() = sb;
    return Symplectic4(m);
}

TwoModeState apply(const Symplectic4& g, const TwoModeState& s) {
    const Mat4& m = g.matrix();
    const Mat4 cov = m * s.cov().matrix() * m.transpose();
    return TwoModeState(m * s.mean(), CovMat4(Mat4(0.5 * (cov + cov.transpose()))), s.omega_a(), s.omega_b());
}

TwoModeState apply(const BilinearTransform& t, const TwoModeState& s) { return apply(symplectic(t), s); }

Vec4 embed_displacements(cplx alpha, cplx delta) {
    const double k = std::numbers::sqrt2;
    return Vec4(k * alpha.real(), k * alpha.imag(), k * delta.real(), k * delta.imag());
}

std::pair<cplx, cplx> extract_displacements(const Vec4& mean) {
    const double k = 1.0 / std::numbers::sqrt2;
    return {cplx(k * mean(0), k * mean(1)), cplx(k * mean(2), k * mean(3))};
}

std::pair<cplx, cplx> displacement_evolution(cplx alpha, cplx delta, const BilinearTransform& t) {
    const cplx e = std::polar(1.0, t.phase);
    if (t.kind == TransformKind::FrequencyConverter) {
        const double c = std::cos(t.angle);
        const double s = std::sin(t.angle);
        return {alpha * c + delta * e * s, delta * c - alpha * std::conj(e) * s};
    }
    const double c = std::cosh(t.angle);
    const double s = std::sinh(t.angle);
    return {alpha * c + std::conj(delta) * e * s, delta * c + std::conj(alpha) * e * s};
}

}  // namespace gthermo
