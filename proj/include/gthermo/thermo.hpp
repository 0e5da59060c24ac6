#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gthermo/gaussian.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

// First-law ledger for one bilinear transformation (ħ = k_B = 1).
struct ThermoReport {
    double dE_A = 0.0;
    double dE_B = 0.0;
    double W = 0.0;  // external work ΔE_A + ΔE_B
    double dQ = 0.0;  // heat absorbed by the bath, ΔB_B
    double dW_A = 0.0;  // work on the system, W − ΔF_B
    double dB_A = 0.0;
    double dB_B = 0.0;
    double dF_A = 0.0;
    double dF_B = 0.0;
    double T_A_in = 0.0;
    double T_B_in = 0.0;
    double T_A_out = 0.0;
    double T_B_out = 0.0;
    double dS_A = 0.0;
    double dS_B = 0.0;
    double dS_AB = 0.0;  // global entropy change, zero up to rounding
    double dI = 0.0;  // von Neumann mutual information change
    double I2_in = 0.0;
    double I2_out = 0.0;
    double dI2 = 0.0;
    bool entangled_in = false;
    bool entangled_out = false;
    double clausius_residual = 0.0;

    double net_gain() const { return dF_A - W; }
};

struct EnergyBreakdown {
    double E;
    double B;
    double F;
};

double internal_energy(const CovMat2& s, const Vec2& mean, double omega);
double bound_energy(const CovMat2& s, double omega);
EnergyBreakdown free_energy(const CovMat2& s, const Vec2& mean, double omega);

double heat_from_dets(const CovMat2& before, const CovMat2& after, double omega_b);
double heat_from_entropies(double s_before, double s_after, double omega_b);

ThermoReport ledger(const BilinearTransform& t, const TwoModeState& s);

// (T_B − T_A)ΔS_A − [ΔF_A + ΔF_B + T_B ΔI − W] with initial intrinsic temperatures.
double clausius_residual(const ThermoReport& report, double dI);

// Names of the ledger identities that fail at the given relative tolerance.
std::vector<std::string> report_violations(const ThermoReport& report, double tolerance = 1e-9);

// (B(ρ′_B), exp(ΔI₂ − ΔS₂(ρ_A))·B(ρ_B)).
std::pair<double, double> renyi_bound_energy_relation(const TwoModeState& before, const TwoModeState& after);

// |δQ/dS_B − T_B| for the transform of the given kind and phase with angle (θ or r) = h.
double infinitesimal_clausius_check(TransformKind kind, double phase, const TwoModeState& s, double h = 1e-3);

}  // namespace gthermo
