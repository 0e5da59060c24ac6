#pragma once

#include <complex>
#include <utility>

#include "gthermo/gaussian.hpp"

namespace gthermo {

using cplx = std::complex<double>;

enum class TransformKind { FrequencyConverter, ParametricAmplifier };

// FC: angle = θ ∈ [0, π/2], phase = φ.  PA: angle = r ≥ 0, phase = ψ.
struct BilinearTransform {
    TransformKind kind = TransformKind::FrequencyConverter;
    double angle = 0.0;
    double phase = 0.0;

    static BilinearTransform fc(double theta, double phi);
    static BilinearTransform pa(double r, double psi);
    static BilinearTransform identity() { return {}; }
};

// Γ = [[A, D], [C, B]] acting on (q_A, p_A, q_B, p_B).
class Symplectic4 {
public:
    Symplectic4() : m_(Mat4::Identity()) {}
    explicit Symplectic4(const Mat4& m) : m_(m) {}

    const Mat4& matrix() const { return m_; }
    Mat2 a() const { return m_.topLeftCorner<2, 2>(); }
    Mat2 d() const { return m_.topRightCorner<2, 2>(); }
    Mat2 c() const { return m_.bottomLeftCorner<2, 2>(); }
    Mat2 b() const { return m_.bottomRightCorner<2, 2>(); }

    bool is_symplectic(double tolerance = tol::num) const;
    Symplectic4 operator*(const Symplectic4& o) const { return Symplectic4(m_ * o.m_); }
    Symplectic4 inverse() const;

private:
    Mat4 m_;
};

class TwoModeState {
public:
    TwoModeState() = default;
    TwoModeState(const Vec4& mean, const CovMat4& cov, double omega_a, double omega_b);

    const Vec4& mean() const { return mean_; }
    Vec2 mean_a() const { return mean_.head<2>(); }
    Vec2 mean_b() const { return mean_.tail<2>(); }
    const CovMat4& cov() const { return cov_; }
    double omega_a() const { return omega_a_; }
    double omega_b() const { return omega_b_; }

private:
    Vec4 mean_ = Vec4::Zero();
    CovMat4 cov_;
    double omega_a_ = 1.0;
    double omega_b_ = 1.0;
};

// R_φ = [[cos φ, sin φ], [−sin φ, cos φ]] and the reflection R̃_ψ = [[cos ψ, sin ψ], [sin ψ, −cos ψ]].
Mat2 rotation(double phi);
Mat2 reflection(double psi);

Symplectic4 fc_symplectic(double theta, double phi);
Symplectic4 pa_symplectic(double r, double psi);
Symplectic4 symplectic(const BilinearTransform& t);

// Single-mode squeezer for S(ζ) = exp(½ζa†² − ½ζ*a²), ζ = r e^{iθ}:
// a → a cosh r + e^{iθ} a† sinh r, i.e. cosh r·I + sinh r·R̃_θ on (q, p).
Mat2 squeezer_symplectic(double r, double theta);
Symplectic4 local_symplectic(const Mat2& sa, const Mat2& sb);

TwoModeState apply(const Symplectic4& g, const TwoModeState& s);
TwoModeState apply(const BilinearTransform& t, const TwoModeState& s);

// Quadrature means √2(Re α, Im α, Re δ, Im δ).
Vec4 embed_displacements(cplx alpha, cplx delta);
std::pair<cplx, cplx> extract_displacements(const Vec4& mean);
std::pair<cplx, cplx> displacement_evolution(cplx alpha, cplx delta, const BilinearTransform& t);

}  // namespace gthermo
