#pragma once

#include <Eigen/Dense>

namespace gthermo {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

namespace tol {
inline constexpr double phys = 1e-9;  // absolute, on symplectic-eigenvalue thresholds
inline constexpr double num = 1e-10;  // relative, for identities
inline constexpr double inv = 1e-12;  // g_inv convergence
}  // namespace tol

// Single-mode covariance matrix in the q = (a + a†)/√2 convention (vacuum = I/2).
class CovMat2 {
public:
    CovMat2() : m_(0.5 * Mat2::Identity()) {}
    // Symmetrizes the input; asymmetry beyond rounding is a caller bug.
    explicit CovMat2(const Mat2& m);

    const Mat2& matrix() const { return m_; }
    double det() const { return m_.determinant(); }
    double trace() const { return m_.trace(); }
    bool is_physical(double tolerance = tol::phys) const;

private:
    Mat2 m_;
};

// Two-mode covariance matrix [[σ_A, ε], [εᵀ, σ_B]].
class CovMat4 {
public:
    CovMat4() : m_(0.5 * Mat4::Identity()) {}
    explicit CovMat4(const Mat4& m);
    CovMat4(const CovMat2& a, const CovMat2& b, const Mat2& eps);

    const Mat4& matrix() const { return m_; }
    CovMat2 block_a() const { return CovMat2(m_.topLeftCorner<2, 2>()); }
    CovMat2 block_b() const { return CovMat2(m_.bottomRightCorner<2, 2>()); }
    Mat2 corr() const { return m_.topRightCorner<2, 2>(); }
    double det() const { return m_.determinant(); }
    // Mirror momentum of mode B (p_B -> -p_B): the Gaussian partial transpose.
    CovMat4 partial_transpose() const;
    bool is_physical(double tolerance = tol::phys) const;

private:
    Mat4 m_;
};

struct SymplecticSpectrum {
    double d_plus;
    double d_minus;
    double d_tilde_minus;
};

struct NormalForm {
    double a;
    double b;
    double c_plus;
    double c_minus;
};

Mat2 omega2();
Mat4 omega4();

// Local symplectic invariant Δ = det σ_A + det σ_B + 2 det ε.
double delta_invariant(const CovMat4& s);

SymplecticSpectrum symplectic_spectrum(const CovMat4& s);
bool is_entangled(const CovMat4& s);
NormalForm normal_form(const CovMat4& s);

double g(double x);
double g_inv(double s);

double entropy_vn_single(const CovMat2& s);
double entropy_vn_two_mode(const CovMat4& s);
double renyi2_entropy(const CovMat2& s);
double renyi2_entropy(const CovMat4& s);
double renyi2_mutual_information(const CovMat4& s);

double purity(const CovMat2& s);
// Thermal photon number of the passive representative: √det σ − ½, clamped at 0.
double thermal_photons(const CovMat2& s);
double intrinsic_temperature(double n_th, double omega);

}  // namespace gthermo
