#include "gthermo/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "gthermo/errors.hpp"

namespace gthermo {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double seed_budget = 1e-11;
constexpr int full_density_max_dim = 16;

int top_levels(int dim) { return std::max(4, dim / 8); }

double top_population(const CMat& rho) {
    const int d = static_cast<int>(rho.rows());
    double p = 0.0;
    for (int i = std::max(0, d - top_levels(d)); i < d; ++i) p += rho(i, i).real();
    return p;
}

std::vector<double> thermal_weights(double n, int dim) {
    std::vector<double> p(dim, 0.0);
    if (n <= 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double q = n / (n + 1.0);
    double w = 1.0 / (n + 1.0);
    for (int m = 0; m < dim; ++m, w *= q) p[m] = w;
    return p;
}


// Unitary on an invariant block of the two-mode space, listed as (n_a, n_b) pairs.
struct Block {
    std::vector<std::pair<int, int>> sites;
    CMat u;
};

// FC conserves n_a + n_b and PA conserves n_a − n_b, so each generator is block diagonal.
std::vector<Block> bilinear_blocks(const BilinearTransform& t, int da, int db) {
    std::vector<Block> blocks;
    const bool fc = t.kind == TransformKind::FrequencyConverter;
    const cplx z = std::polar(t.angle, t.phase);
    auto add = [&](std::vector<std::pair<int, int>> sites) {
        const int n = static_cast<int>(sites.size());
        CMat gen = CMat::Zero(n, n);
        for (int k = 0; k + 1 < n; ++k) {
            const auto [i, j] = sites[k];
            // sites[k+1] is (i+1, j−1) for FC and (i+1, j+1) for PA.
            const double amp = fc ? std::sqrt((i + 1.0) * j) : std::sqrt((i + 1.0) * (j + 1.0));
            gen(k + 1, k) = z * amp;
            gen(k, k + 1) = -std::conj(z) * amp;
        }
        blocks.push_back({std::move(sites), n == 1 ? CMat::Identity(1, 1) : CMat(gen.exp())});
    };
    if (fc) {
        for (int total = 0; total <= da + db - 2; ++total) {
            std::vector<std::pair<int, int>> sites;
            for (int i = std::max(0, total - db + 1); i <= std::min(total, da - 1); ++i) sites.emplace_back(i, total - i);
            add(std::move(sites));
        }
    } else {
        for (int diff = -(db - 1); diff <= da - 1; ++diff) {
            std::vector<std::pair<int, int>> sites;
            for (int j = std::max(0, -diff); j < db && j + diff < da; ++j) sites.emplace_back(j + diff, j);
            add(std::move(sites));
        }
    }
    return blocks;
}

void apply_blocks(const std::vector<Block>& blocks, CMat& psi) {
    Eigen::VectorXcd v, w;
    for (const auto& b : blocks) {
        const auto n = static_cast<Eigen::Index>(b.sites.size());
        if (n == 1 && b.u(0, 0) == cplx(1.0, 0.0)) continue;
        v.resize(n);
        bool any = false;
        for (Eigen::Index k = 0; k < n; ++k) {
            v(k) = psi(b.sites[k].first, b.sites[k].second);
            any = any || v(k) != cplx(0.0, 0.0);
        }
        if (!any) continue;
        w.noalias() = b.u * v;
        for (Eigen::Index k = 0; k < n; ++k) psi(b.sites[k].first, b.sites[k].second) = w(k);
    }
}

CMat dense_unitary(const std::vector<Block>& blocks, int da, int db) {
    CMat u = CMat::Zero(da * db, da * db);
    for (const auto& b : blocks) {
        const auto n = static_cast<Eigen::Index>(b.sites.size());
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                u(b.sites[r].first * db + b.sites[r].second, b.sites[c].first * db + b.sites[c].second) = b.u(r, c);
            }
        }
    }
    return u;
}

Eigen::VectorXd density_eigenvalues(const CMat& rho) {
    Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double entropy_of(const Eigen::VectorXd& ev) {
    double s = 0.0;
    for (double p : ev) {
        if (p > fock::eigen_floor) s -= p * std::log(p);
    }
    return std::max(0.0, s);
}

// Unitary preparation of a recipe from product thermal seeds: ψ = (L_A ⊗ L_B) V |m, n⟩.
struct Preparation {
    double seed_a = 0.0;
    double seed_b = 0.0;
    std::optional<BilinearTransform> mix;
    SingleModeSpec local_a;  // displacement and squeezing applied after mixing
    SingleModeSpec local_b;
    double max_squeeze = 0.0;
    double max_amplitude2 = 0.0;
};

Preparation preparation(const StateRecipe& recipe) {
    Preparation p;
    if (const auto* prod = std::get_if<ProductSpec>(&recipe)) {
        p.seed_a = prod->a.n;
        p.seed_b = prod->b.n;
        p.local_a = prod->a;
        p.local_a.n = 0.0;
        p.local_b = prod->b;
        p.local_b.n = 0.0;
        p.max_squeeze = std::max(prod->a.r, prod->b.r);
        p.max_amplitude2 = std::max(std::norm(prod->a.alpha), std::norm(prod->b.alpha));
        return p;
    }
    const auto& c = std::get<CorrelatedSpec>(recipe);
    p.local_a.alpha = c.alpha;
    p.local_b.alpha = c.delta;
    p.max_amplitude2 = std::max(std::norm(c.alpha), std::norm(c.delta));
    const double a = c.n_a + 0.5, b = c.n_b + 0.5;
    switch (c.family) {
        case CorrelationFamily::TypeI: {
            const double d = std::hypot(a - b, 2.0 * c.c);
            p.seed_a = std::max(0.0, (a + b + d) / 2.0 - 0.5);
            p.seed_b = std::max(0.0, (a + b - d) / 2.0 - 0.5);
            if (d > 0.0) p.mix = BilinearTransform::fc(0.5 * std::atan2(2.0 * std::abs(c.c), a - b), c.c > 0.0 ? pi : 0.0);
            break;
        }
        case CorrelationFamily::TypeII: {
            const double r0 = 0.5 * std::atanh(2.0 * std::abs(c.c) / (a + b));
            const double s = (a + b) / std::cosh(2.0 * r0);
            p.seed_a = std::max(0.0, (s + (a - b)) / 2.0 - 0.5);
            p.seed_b = std::max(0.0, (s - (a - b)) / 2.0 - 0.5);
            p.mix = BilinearTransform::pa(r0, c.c < 0.0 ? pi : 0.0);
            p.max_squeeze = r0;
            break;
        }
        case CorrelationFamily::Tmsv:
            p.mix = BilinearTransform::pa(c.r, 0.0);
            p.max_squeeze = c.r;
            break;
        case CorrelationFamily::Custom:
            throw EnvelopeExceeded("custom correlations have no Fock-space preparation circuit");
    }
    return p;
}

// The circuit must reproduce the requested covariance before any Fock computation relies on it.
void check_preparation(const Preparation& p, const StateRecipe& recipe) {
    const TwoModeState target = make_state(recipe);
    Mat4 seed = Mat4::Zero();
    seed.diagonal() << p.seed_a + 0.5, p.seed_a + 0.5, p.seed_b + 0.5, p.seed_b + 0.5;
    Symplectic4 g = local_symplectic(squeezer_symplectic(p.local_a.r, p.local_a.theta),
                                     squeezer_symplectic(p.local_b.r, p.local_b.theta));
    if (p.mix) g = g * symplectic(*p.mix);
    const Mat4 achieved = g.matrix() * seed * g.matrix().transpose();
    const double err = (achieved - target.cov().matrix()).cwiseAbs().maxCoeff();
    if (err > 1e-6 * std::max(1.0, target.cov().matrix().cwiseAbs().maxCoeff())) {
        std::ostringstream os;
        os << "preparation circuit misses the target covariance by " << err;
        throw std::logic_error(os.str());
    }
}

CMat local_unitary(const SingleModeSpec& s, int dim) {
    CMat u = CMat::Identity(dim, dim);
    if (s.r != 0.0) u = squeeze_unitary(s.r, s.theta, dim);
    if (s.alpha != cplx(0.0, 0.0)) u = displacement_unitary(s.alpha, dim) * u;
    return u;
}

struct Marginals {
    CMat a_in, b_in, a_out, b_out;
    double weight = 0.0;
    double weight2 = 0.0;
    std::optional<CMat> full_in, full_out;
};

Marginals evolve(const Preparation& prep, const BilinearTransform& t, int d) {
    const auto pa = thermal_weights(prep.seed_a, d);
    const auto pb = thermal_weights(prep.seed_b, d);
    const CMat ua = local_unitary(prep.local_a, d);
    const CMat ub_t = local_unitary(prep.local_b, d).transpose();
    const bool local_a = prep.local_a.r != 0.0 || prep.local_a.alpha != cplx(0.0, 0.0);
    const bool local_b = prep.local_b.r != 0.0 || prep.local_b.alpha != cplx(0.0, 0.0);
    std::vector<Block> mix;
    if (prep.mix) mix = bilinear_blocks(*prep.mix, d, d);
    const auto transform = bilinear_blocks(t, d, d);

    Marginals m;
    m.a_in = m.b_in = m.a_out = m.b_out = CMat::Zero(d, d);
    const bool full = d <= full_density_max_dim;
    if (full) {
        m.full_in = CMat::Zero(d * d, d * d);
        m.full_out = CMat::Zero(d * d, d * d);
    }
    auto flatten = [d](const CMat& psi) {
        Eigen::VectorXcd v(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(i * d + j) = psi(i, j);
        return v;
    };

    // Seeds ordered by weight; the lightest are dropped while their total stays below seed_budget.
    std::vector<std::pair<int, int>> seeds;
    std::vector<double> weights;
    {
        std::vector<std::tuple<double, int, int>> all;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (pa[i] * pb[j] > 0.0) all.emplace_back(pa[i] * pb[j], i, j);
        std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
        double dropped = 0.0;
        while (!all.empty() && dropped + std::get<0>(all.back()) <= seed_budget) {
            dropped += std::get<0>(all.back());
            all.pop_back();
        }
        for (const auto& [w, i, j] : all) {
            seeds.emplace_back(i, j);
            weights.push_back(w);
        }
    }

    // Marginals accumulate as M Mᴴ over batches of weighted pure states placed side by side.
    constexpr int batch = 16;
    CMat stack_a_in(d, batch * d), stack_b_in(d, batch * d), stack_a_out(d, batch * d), stack_b_out(d, batch * d);
    int filled = 0;
    auto flush = [&]() {
        if (filled == 0) return;
        const auto cols = static_cast<Eigen::Index>(filled) * d;
        m.a_in.noalias() += stack_a_in.leftCols(cols) * stack_a_in.leftCols(cols).adjoint();
        m.b_in.noalias() += stack_b_in.leftCols(cols) * stack_b_in.leftCols(cols).adjoint();
        m.a_out.noalias() += stack_a_out.leftCols(cols) * stack_a_out.leftCols(cols).adjoint();
        m.b_out.noalias() += stack_b_out.leftCols(cols) * stack_b_out.leftCols(cols).adjoint();
        filled = 0;
    };

    CMat psi(d, d);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        const auto [i, j] = seeds[s];
        const double w = weights[s];
        const double sw = std::sqrt(w);
        m.weight += w;
        m.weight2 += w * w;
        if (prep.mix) {
            psi.setZero();
            psi(i, j) = 1.0;
            apply_blocks(mix, psi);
            if (local_a) psi = ua * psi;
            if (local_b) psi = psi * ub_t;
        } else {
            psi.noalias() = ua.col(i) * ub_t.row(j);
        }
        stack_a_in.middleCols(filled * d, d) = sw * psi;
        stack_b_in.middleCols(filled * d, d) = sw * psi.transpose();
        if (full) {
            const Eigen::VectorXcd v = flatten(psi);
            m.full_in->noalias() += w * v * v.adjoint();
        }
        apply_blocks(transform, psi);
        stack_a_out.middleCols(filled * d, d) = sw * psi;
        stack_b_out.middleCols(filled * d, d) = sw * psi.transpose();
        if (full) {
            const Eigen::VectorXcd v = flatten(psi);
            m.full_out->noalias() += w * v * v.adjoint();
        }
        if (++filled == batch) flush();
    }
    flush();
    const double z = m.weight;
    for (CMat* r : {&m.a_in, &m.b_in, &m.a_out, &m.b_out}) *r /= z;
    if (full) {
        *m.full_in /= z;
        *m.full_out /= z;
    }
    m.weight2 /= z * z;
    return m;
}

bool ppt_violated(const CMat& rho, int d) {
    CMat pt(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) pt(i * d + j, k * d + l) = rho(i * d + l, k * d + j);
    return density_eigenvalues(pt).minCoeff() < -1e-7;
}

}  // namespace

CMat annihilation(int dim) {
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMat displacement_unitary(cplx alpha, int dim) {
    const CMat a = annihilation(dim);
    const CMat gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

CMat squeeze_unitary(double r, double theta, int dim) {
    const CMat a = annihilation(dim);
    const CMat ad = a.adjoint();
    const cplx z = std::polar(r, theta);
    const CMat gen = 0.5 * z * ad * ad - 0.5 * std::conj(z) * a * a;
    return gen.exp();
}

CMat build_fock(const SingleModeSpec& spec, int dim) {
    validate(spec);
    const auto p = thermal_weights(spec.n, dim);
    const CMat u = local_unitary(spec, dim);
    Eigen::VectorXcd diag(dim);
    for (int m = 0; m < dim; ++m) diag(m) = p[m];
    CMat rho = u * diag.asDiagonal() * u.adjoint();
    const double tail = std::max(top_population(rho), 1.0 - rho.trace().real());
    if (tail >= fock::tail_tol) {
        std::ostringstream os;
        os << "single-mode state needs more than " << dim << " Fock levels (tail " << tail << ")";
        throw TruncationOverflow(os.str());
    }
    return rho;
}

CMat build_fock(const SingleModeSpec& spec) {
    int dim = static_cast<int>(std::ceil(8.0 * (spec.n + std::norm(spec.alpha) + std::exp(2.0 * spec.r))));
    for (;; dim = std::min(2 * dim, fock::max_dim)) {
        try {
            return build_fock(spec, dim);
        } catch (const TruncationOverflow&) {
            if (dim >= fock::max_dim) throw;
        }
    }
}

FockDensity product_density(const CMat& rho_a, const CMat& rho_b) {
    const int da = static_cast<int>(rho_a.rows()), db = static_cast<int>(rho_b.rows());
    FockDensity out{da, db, CMat(da * db, da * db)};
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < da; ++k) out.rho.block(i * db, k * db, db, db) = rho_a(i, k) * rho_b;
    return out;
}

FockDensity apply_bilinear_fock(const BilinearTransform& t, const FockDensity& rho) {
    const CMat u = dense_unitary(bilinear_blocks(t, rho.dim_a, rho.dim_b), rho.dim_a, rho.dim_b);
    FockDensity out{rho.dim_a, rho.dim_b, u * rho.rho * u.adjoint()};
    const double tail =
        std::max(top_population(partial_trace_b(out)), top_population(partial_trace_a(out)));
    if (tail >= fock::tail_tol) {
        std::ostringstream os;
        os << "transformed state leaks into the top Fock levels (tail " << tail << ")";
        throw TruncationOverflow(os.str());
    }
    return out;
}

CMat partial_trace_a(const FockDensity& rho) {
    CMat out = CMat::Zero(rho.dim_b, rho.dim_b);
    for (int i = 0; i < rho.dim_a; ++i) out += rho.rho.block(i * rho.dim_b, i * rho.dim_b, rho.dim_b, rho.dim_b);
    return out;
}

CMat partial_trace_b(const FockDensity& rho) {
    CMat out(rho.dim_a, rho.dim_a);
    for (int i = 0; i < rho.dim_a; ++i)
        for (int k = 0; k < rho.dim_a; ++k) out(i, k) = rho.rho.block(i * rho.dim_b, k * rho.dim_b, rho.dim_b, rho.dim_b).trace();
    return out;
}

double entropy_from_density(const CMat& rho) { return entropy_of(density_eigenvalues(rho)); }

double mean_photons(const CMat& rho) {
    double n = 0.0;
    for (Eigen::Index k = 0; k < rho.rows(); ++k) n += static_cast<double>(k) * rho(k, k).real();
    return n;
}

std::optional<std::string> outside_envelope(const BilinearTransform& t, const StateRecipe& recipe) {
    constexpr double n_max = 4.0, r_max = 0.7, amp_max = 1.5;
    auto over = [](double v, double lim) { return v > lim + 1e-12; };
    if (t.kind == TransformKind::ParametricAmplifier && over(t.angle, r_max)) return "amplifier gain r exceeds 0.7";
    if (const auto* p = std::get_if<ProductSpec>(&recipe)) {
        for (const auto* m : {&p->a, &p->b}) {
            if (over(m->n, n_max)) return "thermal photon number exceeds 4";
            if (over(m->r, r_max)) return "squeezing r exceeds 0.7";
            if (over(std::abs(m->alpha), amp_max)) return "displacement modulus exceeds 1.5";
        }
        return std::nullopt;
    }
    const auto& c = std::get<CorrelatedSpec>(recipe);
    if (c.family == CorrelationFamily::Custom) return "custom correlations are outside the oracle envelope";
    if (over(c.n_a, n_max) || over(c.n_b, n_max)) return "thermal photon number exceeds 4";
    if (c.family == CorrelationFamily::Tmsv && over(c.r, r_max)) return "squeezing r exceeds 0.7";
    if (over(std::abs(c.alpha), amp_max) || over(std::abs(c.delta), amp_max)) return "displacement modulus exceeds 1.5";
    return std::nullopt;
}

OracleResult oracle_report(const BilinearTransform& t, const StateRecipe& recipe) {
    if (auto why = outside_envelope(t, recipe)) throw EnvelopeExceeded("outside the Fock oracle envelope: " + *why);
    const TwoModeState gaussian = make_state(recipe);  // validates the recipe
    const Preparation prep = preparation(recipe);
    check_preparation(prep, recipe);

    const double r_max = std::max(prep.max_squeeze, t.kind == TransformKind::ParametricAmplifier ? t.angle : 0.0);
    const double n_max = std::max(prep.seed_a, prep.seed_b);
    int dim = static_cast<int>(std::ceil(8.0 * (n_max + prep.max_amplitude2 + std::exp(2.0 * r_max))));
    dim = std::min(dim, fock::max_dim);

    Marginals m;
    double tail = 0.0;
    for (;;) {
        m = evolve(prep, t, dim);
        tail = 1.0 - m.weight;
        for (const CMat* r : {&m.a_in, &m.b_in, &m.a_out, &m.b_out}) tail = std::max(tail, top_population(*r));
        if (tail < fock::tail_tol) break;
        if (dim >= fock::max_dim) {
            std::ostringstream os;
            os << "oracle needs more than " << fock::max_dim << " Fock levels per mode (tail " << tail << ")";
            throw TruncationOverflow(os.str());
        }
        dim = std::min(2 * dim, fock::max_dim);
    }

    OracleResult out;
    out.dim = dim;
    out.tail = tail;
    out.n_a_in = mean_photons(m.a_in);
    out.n_b_in = mean_photons(m.b_in);
    out.n_a_out = mean_photons(m.a_out);
    out.n_b_out = mean_photons(m.b_out);
    out.S_A_in = entropy_from_density(m.a_in);
    out.S_B_in = entropy_from_density(m.b_in);
    out.S_A_out = entropy_from_density(m.a_out);
    out.S_B_out = entropy_from_density(m.b_out);

    const double wa = gaussian.omega_a(), wb = gaussian.omega_b();
    const double na_eff_in = g_inv(out.S_A_in), na_eff_out = g_inv(out.S_A_out);
    const double nb_eff_in = g_inv(out.S_B_in), nb_eff_out = g_inv(out.S_B_out);

    ThermoReport& r = out.report;
    r.dE_A = wa * (out.n_a_out - out.n_a_in);
    r.dE_B = wb * (out.n_b_out - out.n_b_in);
    r.W = r.dE_A + r.dE_B;
    r.dB_A = wa * (na_eff_out - na_eff_in);
    r.dB_B = wb * (nb_eff_out - nb_eff_in);
    r.dQ = r.dB_B;
    r.dF_A = r.dE_A - r.dB_A;
    r.dF_B = r.dE_B - r.dB_B;
    r.dW_A = r.W - r.dF_B;
    r.T_A_in = intrinsic_temperature(na_eff_in, wa);
    r.T_B_in = intrinsic_temperature(nb_eff_in, wb);
    r.T_A_out = intrinsic_temperature(na_eff_out, wa);
    r.T_B_out = intrinsic_temperature(nb_eff_out, wb);
    r.dS_A = out.S_A_out - out.S_A_in;
    r.dS_B = out.S_B_out - out.S_B_in;

    auto renyi2 = [](const CMat& rho) { return -std::log(rho.cwiseAbs2().sum()); };
    const double s2_global = -std::log(m.weight2);
    r.I2_in = renyi2(m.a_in) + renyi2(m.b_in) - s2_global;
    r.I2_out = renyi2(m.a_out) + renyi2(m.b_out) - s2_global;
    r.dI2 = r.I2_out - r.I2_in;

    if (m.full_in) {
        const Eigen::VectorXd ev_in = density_eigenvalues(*m.full_in);
        const Eigen::VectorXd ev_out = density_eigenvalues(*m.full_out);
        out.global_spectrum_gap = (ev_in - ev_out).cwiseAbs().maxCoeff();
        r.dS_AB = entropy_of(ev_out) - entropy_of(ev_in);
        r.entangled_in = ppt_violated(*m.full_in, dim);
        r.entangled_out = ppt_violated(*m.full_out, dim);
        out.ppt_evaluated = true;
    }
    r.dI = r.dS_A + r.dS_B - r.dS_AB;
    r.clausius_residual = clausius_residual(r, r.dI);
    return out;
}

}  // namespace gthermo
