#include "gthermo/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

Mat2 sigma_z() { return Vec2(1.0, -1.0).asDiagonal(); }

void check_thermal(double n, const char* name) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
        std::ostringstream os;
        os << name << " = " << n << " must be a non-negative thermal photon number";
        throw DomainError(os.str());
    }
}

TwoModeState locally_thermal(const CorrelatedSpec& spec, const Mat2& eps) {
    check_thermal(spec.n_a, "N_A");
    check_thermal(spec.n_b, "N_B");
    const CovMat2 sa(Mat2((spec.n_a + 0.5) * Mat2::Identity()));
    const CovMat2 sb(Mat2((spec.n_b + 0.5) * Mat2::Identity()));
    return TwoModeState(embed_displacements(spec.alpha, spec.delta), CovMat4(sa, sb, eps), spec.omega_a,
                        spec.omega_b);
}

[[noreturn]] void bound_violation(const char* inequality, double c, double bound) {
    std::ostringstream os;
    os.precision(12);
    os << "correlation bound " << inequality << " violated: |c| = " << std::abs(c) << " > " << bound;
    throw CorrelationBoundViolation(os.str());
}

}  // namespace

void validate(const SingleModeSpec& spec) {
    check_thermal(spec.n, "N");
    if (!(spec.r >= 0.0) || !std::isfinite(spec.r)) throw DomainError("squeeze magnitude r must be non-negative");
    if (!(spec.theta >= 0.0 && spec.theta <= 2.0 * std::numbers::pi + 1e-12)) {
        throw DomainError("squeeze phase θ must lie in [0, 2π]");
    }
    if (!(spec.omega > 0.0)) throw DomainError("mode frequency ω must be positive");
}

std::pair<CovMat2, Vec2> make_single_mode(const SingleModeSpec& spec) {
    validate(spec);
    const double nu = spec.n + 0.5;
    const double ch = std::cosh(2.0 * spec.r);
    const double sh = std::sinh(2.0 * spec.r);
    Mat2 m;
    m(0, 0) = nu * (ch + std::cos(spec.theta) * sh);
    m(1, 1) = nu * (ch - std::cos(spec.theta) * sh);
    m(0, 1) = m(1, 0) = nu * std::sin(spec.theta) * sh;
    const Vec2 mean = std::numbers::sqrt2 * Vec2(spec.alpha.real(), spec.alpha.imag());
    return {CovMat2(m), mean};
}

TwoModeState make_product(const SingleModeSpec& a, const SingleModeSpec& b) {
    const auto [sa, ma] = make_single_mode(a);
    const auto [sb, mb] = make_single_mode(b);
    Vec4 mean;
    mean << ma, mb;
    return TwoModeState(mean, CovMat4(sa, sb, Mat2::Zero()), a.omega, b.omega);
}

double type1_bound(double n_a, double n_b) { return std::sqrt(n_a * n_b); }

double type2_bound(double n_a, double n_b) {
    return n_a <= n_b ? std::sqrt(n_a * (1.0 + n_b)) : std::sqrt(n_b * (1.0 + n_a));
}

TwoModeState make_type1(const CorrelatedSpec& spec) {
    check_thermal(spec.n_a, "N_A");
    check_thermal(spec.n_b, "N_B");
    const double bound = type1_bound(spec.n_a, spec.n_b);
    if (std::abs(spec.c) > bound + tol::phys) bound_violation("|c| <= sqrt(N_A N_B)", spec.c, bound);
    return locally_thermal(spec, spec.c * Mat2::Identity());
}

TwoModeState make_type2(const CorrelatedSpec& spec) {
    check_thermal(spec.n_a, "N_A");
    check_thermal(spec.n_b, "N_B");
    const double bound = type2_bound(spec.n_a, spec.n_b);
    if (std::abs(spec.c) > bound + tol::phys) {
        bound_violation(spec.n_a <= spec.n_b ? "|c| <= sqrt(N_A (1 + N_B))" : "|c| <= sqrt(N_B (1 + N_A))", spec.c,
                        bound);
    }
    return locally_thermal(spec, spec.c * sigma_z());
}

TwoModeState make_tmsv(double r, double omega_a, double omega_b) {
    if (!(r >= 0.0)) throw DomainError("two-mode squeezing r must be non-negative");
    const double ch = 0.5 * std::cosh(2.0 * r);
    const CovMat2 s(Mat2(ch * Mat2::Identity()));
    return TwoModeState(Vec4::Zero(), CovMat4(s, s, 0.5 * std::sinh(2.0 * r) * sigma_z()), omega_a, omega_b);
}

TwoModeState make_correlated(const CorrelatedSpec& spec) {
    switch (spec.family) {
        case CorrelationFamily::TypeI:
            return make_type1(spec);
        case CorrelationFamily::TypeII:
            return make_type2(spec);
        case CorrelationFamily::Tmsv: {
            const TwoModeState vac = make_tmsv(spec.r, spec.omega_a, spec.omega_b);
            return TwoModeState(embed_displacements(spec.alpha, spec.delta), vac.cov(), spec.omega_a, spec.omega_b);
        }
        case CorrelationFamily::Custom:
            if (!spec.custom_eps) throw DomainError("custom correlation family requires custom_eps");
            return locally_thermal(spec, *spec.custom_eps);
    }
    throw DomainError("unknown correlation family");
}

TwoModeState make_state(const StateRecipe& recipe) {
    if (const auto* p = std::get_if<ProductSpec>(&recipe)) return make_product(p->a, p->b);
    return make_correlated(std::get<CorrelatedSpec>(recipe));
}

double fs_factor(double r_a, double r_b, double theta_ab, double phi) {
    return std::cosh(2.0 * r_a) * std::cosh(2.0 * r_b) -
           std::sinh(2.0 * r_a) * std::sinh(2.0 * r_b) * std::cos(theta_ab - 2.0 * phi);
}

double gs_factor(double r_a, double r_b, double theta_sum, double psi) {
    return std::cosh(2.0 * r_a) * std::cosh(2.0 * r_b) -
           std::sinh(2.0 * r_a) * std::sinh(2.0 * r_b) * std::cos(theta_sum - 2.0 * psi);
}

}  // namespace gthermo
