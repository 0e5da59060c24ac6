#pragma once

#include "gthermo/thermo.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

struct ExtractionResult {
    double net_gain = 0.0;  // W̃ = ΔF_A − W
    double dF_A = 0.0;
    double W = 0.0;
    double dE_B = 0.0;
    double dB_A = 0.0;
    BilinearTransform argmax;
};

// Requires a system mode without coherent signal (‖mean_A‖ ≤ 1e-10).
ExtractionResult net_work(const BilinearTransform& t, const TwoModeState& s);

struct TypeIOptimum {
    double theta = 0.0;
    double phi = 0.0;
    double net_gain = 0.0;
    bool feasible = false;
    // ½ arctan(2|c|/|N_A − N_B|), the principal-branch angle, and W̃ evaluated there with the same φ.
    double theta_principal = 0.0;
    double net_gain_principal = 0.0;
};

// Type-I inputs without bath displacement under FC(θ, φ).
TypeIOptimum optimal_theta_type1(double n_a, double n_b, double c, double omega_a, double omega_b);

struct TmsvOptimum {
    double theta = 0.0;
    double net_gain = 0.0;
};

TmsvOptimum tmsv_optimum(double r, double omega_a);

struct PaTypeIIOptimum {
    double psi = 0.0;
    double r = 0.0;
    double net_gain = 0.0;
    // Stationary point r = atanh(2√(N(N+1))/K) with K = 4N + 2 + |δ|², and its W̃.
    double r_stationary_alt = 0.0;
    double net_gain_alt = 0.0;
};

// Equal frequencies, N_A = N_B = N, c = √(N(N+1)), bath displacement of modulus² delta_abs2.
PaTypeIIOptimum pa_type2_optimum(double n, double delta_abs2, double omega);

struct MaximizeOptions {
    int grid = 64;
    double r_cap = 5.0;
    int sweeps = 4;
    int golden_iterations = 80;
};

// Grid scan over (θ, φ) ∈ [0, π/2]×[0, 2π) or (r, ψ) ∈ [0, r_cap]×[0, 2π), then golden-section
// refinement per axis. Ties resolve to the lexicographically smallest parameter pair.
ExtractionResult numeric_maximize(TransformKind kind, const TwoModeState& s, const MaximizeOptions& opts = {});

}  // namespace gthermo
