#pragma once

#include <optional>

#include <Eigen/Dense>

#include "gthermo/states.hpp"
#include "gthermo/thermo.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

using CMat = Eigen::MatrixXcd;

namespace fock {
inline constexpr double tail_tol = 1e-8;
inline constexpr double eigen_floor = 1e-14;
inline constexpr int max_dim = 128;
}  // namespace fock

// Two-mode density matrix on |n_a⟩ ⊗ |n_b⟩, index n_a·dim_b + n_b.
struct FockDensity {
    int dim_a = 0;
    int dim_b = 0;
    CMat rho;
};

// Truncated ladder operator a with a|n⟩ = √n |n−1⟩.
CMat annihilation(int dim);
// exp(αa† − α*a), exp(½ζa†² − ½ζ*a²) on a truncated space.
CMat displacement_unitary(cplx alpha, int dim);
CMat squeeze_unitary(double r, double theta, int dim);

// D(α)S(ζ) ν_N S(ζ)† D(α)† at fixed truncation. Fails with TruncationOverflow when the
// population in the top max(4, dim/8) levels reaches tail_tol.
CMat build_fock(const SingleModeSpec& spec, int dim);
// Same state with dim chosen adaptively from ceil(8(N + |α|² + e^{2r})), doubling up to max_dim.
CMat build_fock(const SingleModeSpec& spec);

FockDensity product_density(const CMat& rho_a, const CMat& rho_b);
// ρ′ = UρU† with U = exp(ζa†b − ζ*ab†) or exp(ξa†b† − ξ*ab). Dense, meant for small dimensions.
FockDensity apply_bilinear_fock(const BilinearTransform& t, const FockDensity& rho);

CMat partial_trace_a(const FockDensity& rho);  // returns ρ_B
CMat partial_trace_b(const FockDensity& rho);  // returns ρ_A
double entropy_from_density(const CMat& rho);
double mean_photons(const CMat& rho);

// True when the recipe lies inside N ≤ 4, r ≤ 0.7, |α|, |δ| ≤ 1.5 and the transform is within
// PA r ≤ 0.7. Otherwise the reason.
std::optional<std::string> outside_envelope(const BilinearTransform& t, const StateRecipe& recipe);

struct OracleResult {
    ThermoReport report;
    int dim = 0;
    double tail = 0.0;
    double n_a_in = 0.0, n_b_in = 0.0, n_a_out = 0.0, n_b_out = 0.0;
    double S_A_in = 0.0, S_B_in = 0.0, S_A_out = 0.0, S_B_out = 0.0;
    // Set only when the full density matrix is small enough to diagonalize.
    bool ppt_evaluated = false;
    std::optional<double> global_spectrum_gap;
};

// Every ledger quantity rebuilt from truncated Fock-space states. Correlated recipes are prepared
// by a two-mode unitary on thermal seeds. Fails with EnvelopeExceeded or TruncationOverflow.
OracleResult oracle_report(const BilinearTransform& t, const StateRecipe& recipe);

}  // namespace gthermo
