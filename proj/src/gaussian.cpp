#include "gthermo/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

template <typename M>
M symmetrized(const M& m, const char* what) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw DomainError(std::string(what) + ": matrix is not symmetric");
    }
    return 0.5 * (m + m.transpose());
}

// Symplectic eigenvalues as singular values of LᵀΩL with σ = LLᵀ. The singular
// values of a real antisymmetric matrix come in equal pairs (d₊, d₊, d₋, d₋).
std::optional<std::pair<double, double>> spectrum_pair(const Mat4& m) {
    Eigen::LLT<Mat4> llt(m);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Mat4 l = llt.matrixL();
    const Mat4 k = l.transpose() * omega4() * l;
    Eigen::JacobiSVD<Mat4> svd(k);
    const Vec4 s = svd.singularValues();
    return std::make_pair(0.5 * (s(0) + s(1)), 0.5 * (s(2) + s(3)));
}

// Rounding in d₋ grows like ε_mach·‖σ‖², which dominates the fixed tolerance for strongly squeezed states.
double physical_slack(const Mat4& m, double tolerance) {
    const double scale = m.cwiseAbs().maxCoeff();
    return std::max(tolerance, 64.0 * std::numeric_limits<double>::epsilon() * scale * scale);
}

void require_single_physical(const CovMat2& s, const char* what) {
    if (!s.is_physical()) {
        std::ostringstream os;
        os << what << ": det σ = " << s.det() << " < 1/4";
        throw NonPhysical(os.str());
    }
}

SymplecticSpectrum checked_spectrum(const CovMat4& s, const char* what) {
    SymplecticSpectrum sp = symplectic_spectrum(s);
    if (sp.d_minus < 0.5 - physical_slack(s.matrix(), tol::phys)) {
        std::ostringstream os;
        os << what << ": smaller symplectic eigenvalue " << sp.d_minus << " < 1/2";
        throw NonPhysical(os.str());
    }
    return sp;
}

}  // namespace

CovMat2::CovMat2(const Mat2& m) : m_(symmetrized(m, "CovMat2")) {}

bool CovMat2::is_physical(double tolerance) const {
    return m_.trace() > 0.0 && m_(0, 0) > 0.0 && det() >= 0.25 - tolerance;
}

CovMat4::CovMat4(const Mat4& m) : m_(symmetrized(m, "CovMat4")) {}

CovMat4::CovMat4(const CovMat2& a, const CovMat2& b, const Mat2& eps) {
    m_.topLeftCorner<2, 2>() = a.matrix();
    m_.bottomRightCorner<2, 2>() = b.matrix();
    m_.topRightCorner<2, 2>() = eps;
    m_.bottomLeftCorner<2, 2>() = eps.transpose();
}

CovMat4 CovMat4::partial_transpose() const {
    const Vec4 p(1.0, 1.0, 1.0, -1.0);
    return CovMat4(p.asDiagonal() * m_ * p.asDiagonal());
}

bool CovMat4::is_physical(double tolerance) const {
    const auto sp = spectrum_pair(m_);
    return sp && sp->second >= 0.5 - physical_slack(m_, tolerance);
}

Mat2 omega2() {
    Mat2 w;
    w << 0.0, 1.0, -1.0, 0.0;
    return w;
}

Mat4 omega4() {
    Mat4 w = Mat4::Zero();
    w.topLeftCorner<2, 2>() = omega2();
    w.bottomRightCorner<2, 2>() = omega2();
    return w;
}

double delta_invariant(const CovMat4& s) {
    return s.block_a().det() + s.block_b().det() + 2.0 * s.corr().determinant();
}

SymplecticSpectrum symplectic_spectrum(const CovMat4& s) {
    const double det = s.det();
    const Mat4& m = s.matrix();
    const double det_scale = std::max(1.0, m.diagonal().prod());
    if (det < -tol::num * det_scale) {
        std::ostringstream os;
        os << "symplectic_spectrum: det σ_AB = " << det << " < 0";
        throw NonPhysical(os.str());
    }
    const double delta = delta_invariant(s);
    const double disc = delta * delta - 4.0 * det;
    const double terms = s.block_a().det() + s.block_b().det() + 2.0 * std::abs(s.corr().determinant());
    if (disc < -tol::num * std::max(1.0, terms * terms)) {
        std::ostringstream os;
        os << "symplectic_spectrum: discriminant Δ² − 4 det σ = " << disc << " < 0";
        throw NumericalDomain(os.str());
    }
    const auto direct = spectrum_pair(s.matrix());
    const auto mirrored = spectrum_pair(s.partial_transpose().matrix());
    if (!direct || !mirrored) {
        throw NonPhysical("symplectic_spectrum: covariance matrix is not positive definite");
    }
    return {direct->first, direct->second, mirrored->second};
}

bool is_entangled(const CovMat4& s) {
    const SymplecticSpectrum sp = checked_spectrum(s, "is_entangled");
    return sp.d_tilde_minus < 0.5 - tol::phys;
}

NormalForm normal_form(const CovMat4& s) {
    checked_spectrum(s, "normal_form");
    const CovMat2 sa = s.block_a();
    const CovMat2 sb = s.block_b();
    const double a = std::sqrt(sa.det());
    const double b = std::sqrt(sb.det());

    // Whiten each marginal with a local symplectic S_X = √x σ_X^{-1/2} (det S_X = 1).
    Eigen::SelfAdjointEigenSolver<Mat2> ea(sa.matrix());
    Eigen::SelfAdjointEigenSolver<Mat2> eb(sb.matrix());
    const Mat2 wa = std::sqrt(a) * ea.operatorInverseSqrt();
    const Mat2 wb = std::sqrt(b) * eb.operatorInverseSqrt();
    const Mat2 eps = wa * s.corr() * wb.transpose();

    // Diagonalize the correlation block with proper rotations only, which leave a·I and b·I intact.
    Eigen::JacobiSVD<Mat2> svd(eps, Eigen::ComputeFullU | Eigen::ComputeFullV);
    double c_plus = svd.singularValues()(0);
    double c_minus = svd.singularValues()(1);
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) c_minus = -c_minus;
    return {a, b, c_plus, c_minus};
}

double g(double x) {
    if (x < 0.0 || std::isnan(x)) throw NumericalDomain("g: negative argument");
    if (x == 0.0) return 0.0;
    return std::log1p(x) + x * std::log1p(1.0 / x);
}

double g_inv(double s) {
    if (s < 0.0 || std::isnan(s)) throw NumericalDomain("g_inv: negative entropy");
    if (s == 0.0) return 0.0;
    double lo = 0.0;
    double hi = std::max(1.0, std::exp(s));
    while (g(hi) < s) hi *= 2.0;

    // g(x) ≈ ln x + 1 for large x gives a good starting point there.
    double x = std::exp(s - 1.0) - 0.5;
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        const double f = g(x) - s;
        if (f == 0.0) return x;
        if (f < 0.0) lo = x; else hi = x;
        double next = x - f / std::log1p(1.0 / x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-3 * tol::inv * x || hi - lo <= 1e-3 * tol::inv * x) return next;
        x = next;
    }
    return x;
}

double entropy_vn_single(const CovMat2& s) {
    require_single_physical(s, "entropy_vn_single");
    return g(thermal_photons(s));
}

double entropy_vn_two_mode(const CovMat4& s) {
    const SymplecticSpectrum sp = checked_spectrum(s, "entropy_vn_two_mode");
    return g(std::max(0.0, sp.d_plus - 0.5)) + g(std::max(0.0, sp.d_minus - 0.5));
}

double renyi2_entropy(const CovMat2& s) {
    require_single_physical(s, "renyi2_entropy");
    return -std::log(2.0 * purity(s));
}

double renyi2_entropy(const CovMat4& s) {
    checked_spectrum(s, "renyi2_entropy");
    return 0.5 * std::log(s.det());
}

double renyi2_mutual_information(const CovMat4& s) {
    checked_spectrum(s, "renyi2_mutual_information");
    // det σ_AB = det σ_A · det(σ_B − εᵀσ_A⁻¹ε), so ε = 0 gives exactly zero.
    const Mat2 sa = s.block_a().matrix();
    const Mat2 sb = s.block_b().matrix();
    const Mat2 eps = s.corr();
    const Mat2 schur = sb - eps.transpose() * sa.inverse() * eps;
    return 0.5 * std::log(sb.determinant() / schur.determinant());
}

double purity(const CovMat2& s) {
    require_single_physical(s, "purity");
    return 1.0 / (2.0 * std::sqrt(s.det()));
}

double thermal_photons(const CovMat2& s) {
    require_single_physical(s, "thermal_photons");
    return std::max(0.0, std::sqrt(std::max(0.0, s.det())) - 0.5);
}

double intrinsic_temperature(double n_th, double omega) {
    if (!(omega > 0.0)) throw NumericalDomain("intrinsic_temperature: ω must be positive");
    if (n_th < 0.0 || std::isnan(n_th)) throw NumericalDomain("intrinsic_temperature: negative photon number");
    if (n_th == 0.0) return 0.0;
    return omega / std::log1p(1.0 / n_th);
}

}  // namespace gthermo
