#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "gthermo/gaussian.hpp"
#include "gthermo/states.hpp"
#include "gthermo/transforms.hpp"

namespace gt_test {

using namespace gthermo;
inline constexpr double pi = std::numbers::pi;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    cplx amplitude(double bound = 1.5) { return {uniform(-bound, bound), uniform(-bound, bound)}; }

    SingleModeSpec mode() {
        SingleModeSpec m;
        m.n = uniform(0.0, 5.0);
        m.r = coin() ? uniform(0.0, 1.2) : 0.0;
        m.theta = uniform(0.0, 2.0 * pi);
        m.alpha = coin() ? amplitude() : cplx{};
        m.omega = uniform(0.5, 3.0);
        return m;
    }

    CorrelatedSpec correlated(CorrelationFamily f) {
        CorrelatedSpec c;
        c.family = f;
        c.n_a = uniform(0.0, 5.0);
        c.n_b = uniform(0.0, 5.0);
        const double bound = f == CorrelationFamily::TypeI ? type1_bound(c.n_a, c.n_b) : type2_bound(c.n_a, c.n_b);
        c.c = uniform(-bound, bound);
        c.r = uniform(0.0, 1.5);
        c.alpha = coin() ? amplitude() : cplx{};
        c.delta = coin() ? amplitude() : cplx{};
        c.omega_a = uniform(0.5, 3.0);
        c.omega_b = uniform(0.5, 3.0);
        return c;
    }

    StateRecipe recipe() {
        switch (integer(0, 3)) {
            case 0: return ProductSpec{mode(), mode()};
            case 1: return correlated(CorrelationFamily::TypeI);
            case 2: return correlated(CorrelationFamily::TypeII);
            default: return correlated(CorrelationFamily::Tmsv);
        }
    }

    BilinearTransform transform() {
        return coin() ? BilinearTransform::fc(uniform(0.0, pi / 2), uniform(0.0, 2.0 * pi))
                      : BilinearTransform::pa(uniform(0.0, 1.5), uniform(0.0, 2.0 * pi));
    }

    // exp(ΩH) with H symmetric is symplectic; scale keeps the squeezing moderate.
    Mat4 symplectic_matrix(double scale = 0.6) {
        Mat4 h;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) h(i, j) = h(j, i) = uniform(-scale, scale);
        const Mat4 gen = omega4() * h;
        return gen.exp();
    }

    // Williamson form S diag(ν₁, ν₁, ν₂, ν₂) Sᵀ with ν ≥ ½, so physical by construction.
    CovMat4 physical_cov() {
        Vec4 d;
        const double n1 = uniform(0.5, 5.0), n2 = uniform(0.5, 5.0);
        d << n1, n1, n2, n2;
        const Mat4 s = symplectic_matrix();
        return CovMat4(Mat4(s * d.asDiagonal() * s.transpose()));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Symplectic eigenvalues as the moduli of the eigenvalues of iΩσ, sorted descending with pairs merged.
inline std::vector<double> brute_symplectic(const Mat4& s) {
    const Eigen::Matrix4cd m = std::complex<double>(0.0, 1.0) * (omega4() * s).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
    std::vector<double> v;
    for (int i = 0; i < 4; ++i) v.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(v.begin(), v.end(), std::greater<>());
    return {0.5 * (v[0] + v[1]), 0.5 * (v[2] + v[3])};
}

// Bisection inverse of x ↦ (x+1)ln(x+1) − x ln x, independent of the library's Newton iteration.
inline double bisect_g_inv(double s) {
    auto f = [](double x) { return x == 0.0 ? 0.0 : std::log1p(x) + x * std::log1p(1.0 / x); };
    double lo = 0.0, hi = 1.0;
    while (f(hi) < s) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace gt_test
