#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "gthermo/gaussian.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

// Displaced squeezed thermal mode D(α)S(r e^{iθ}) ν_N S† D†.
struct SingleModeSpec {
    double n = 0.0;
    double r = 0.0;
    double theta = 0.0;
    cplx alpha{0.0, 0.0};
    double omega = 1.0;
};

enum class CorrelationFamily { TypeI, TypeII, Tmsv, Custom };

// Locally thermal correlated pair. ε = c·I (TypeI), c·diag(1, −1) (TypeII),
// TMSV uses r only, Custom uses custom_eps.
struct CorrelatedSpec {
    CorrelationFamily family = CorrelationFamily::TypeI;
    double n_a = 0.0;
    double n_b = 0.0;
    double c = 0.0;
    double r = 0.0;
    cplx alpha{0.0, 0.0};
    cplx delta{0.0, 0.0};
    double omega_a = 1.0;
    double omega_b = 1.0;
    std::optional<Mat2> custom_eps;
};

struct ProductSpec {
    SingleModeSpec a;
    SingleModeSpec b;
};

using StateRecipe = std::variant<ProductSpec, CorrelatedSpec>;

void validate(const SingleModeSpec& spec);

std::pair<CovMat2, Vec2> make_single_mode(const SingleModeSpec& spec);
TwoModeState make_product(const SingleModeSpec& a, const SingleModeSpec& b);
TwoModeState make_type1(const CorrelatedSpec& spec);
TwoModeState make_type2(const CorrelatedSpec& spec);
TwoModeState make_tmsv(double r, double omega_a, double omega_b);
TwoModeState make_correlated(const CorrelatedSpec& spec);
TwoModeState make_state(const StateRecipe& recipe);

double type1_bound(double n_a, double n_b);
double type2_bound(double n_a, double n_b);

// F_S = cosh 2r_A cosh 2r_B − sinh 2r_A sinh 2r_B cos(θ_A − θ_B − 2φ).
double fs_factor(double r_a, double r_b, double theta_ab, double phi);
// G_S = cosh 2r_A cosh 2r_B − sinh 2r_A sinh 2r_B cos(θ_A + θ_B − 2ψ); note the phase sum.
double gs_factor(double r_a, double r_b, double theta_sum, double psi);

}  // namespace gthermo
