#include <doctest.h>

#include <set>

#include "gthermo/errors.hpp"
#include "gthermo/predictors.hpp"
#include "gthermo/thermo.hpp"
#include "gthermo/workx.hpp"
#include "support.hpp"

using namespace gt_test;

namespace {

bool agrees(const std::optional<double>& predicted, double actual) {
    if (!predicted) return true;
    return std::abs(*predicted - actual) <= 1e-9 * std::max(1.0, std::abs(actual));
}

double dq_of(const PredictorInput& in) { return ledger(in.transform, build_state(in)).dQ; }

}  // namespace

TEST_SUITE("predictors") {
    TEST_CASE("registry ids are unique and resolvable") {
        std::set<std::string> ids;
        for (const auto& p : predictor_registry()) {
            CHECK(ids.insert(p.id).second);
            CHECK(&find_predictor(p.id) == &p);
        }
        CHECK(ids.size() >= 17);
        CHECK_THROWS_AS(find_predictor("no_such_predictor"), UnknownScenario);
    }

    TEST_CASE("property: every predictor matches the ledger over 1000 draws") {
        std::mt19937_64 rng(51);
        for (const auto& p : predictor_registry()) {
            CAPTURE(p.id);
            int mismatches = 0;
            for (int i = 0; i < 1000; ++i) {
                const PredictorInput in = p.sample(rng);
                REQUIRE(p.check(in).empty());
                const Prediction pr = p.predict(in);
                const TwoModeState s = build_state(in);
                const ThermoReport r = ledger(in.transform, s);
                bool ok = agrees(pr.dE_A, r.dE_A) && agrees(pr.dQ, r.dQ) && agrees(pr.dW_A, r.dW_A);
                if (pr.net_gain) ok = ok && agrees(pr.net_gain, net_work(in.transform, s).net_gain);
                if (!ok) ++mismatches;
            }
            CHECK(mismatches == 0);
        }
    }

    TEST_CASE("validity checks reject foreign inputs") {
        PredictorInput in;
        in.family = StateFamily::TypeII;
        in.transform = BilinearTransform::pa(0.3, 0.0);
        CHECK_FALSE(find_predictor("fc_type2").check(in).empty());
        CHECK_FALSE(find_predictor("fc_coherent_thermal").check(in).empty());
        CHECK(find_predictor("pa_type2").check(in).empty());
    }

    TEST_CASE("worked examples") {
        PredictorInput th;
        th.n_a = 2;
        th.n_b = 1;
        th.transform = BilinearTransform::fc(pi / 4, 0);
        CHECK(*find_predictor("fc_coherent_thermal").predict(th).dQ == doctest::Approx(0.5).epsilon(1e-12));

        PredictorInput q;
        q.family = StateFamily::TypeII;
        q.n_a = q.n_b = 1;
        q.c = 1.2;
        q.transform = BilinearTransform::fc(pi / 4, 0);
        CHECK(*find_predictor("fc_type2").predict(q).dQ == doctest::Approx(-0.6).epsilon(1e-12));
    }

    TEST_CASE("recipe round trip") {
        Gen gen(52);
        for (int i = 0; i < 200; ++i) {
            const StateRecipe r = gen.recipe();
            const BilinearTransform t = gen.transform();
            const PredictorInput in = predictor_input(r, t);
            const Mat4 diff = build_state(in).cov().matrix() - make_state(r).cov().matrix();
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, make_state(r).cov().matrix().cwiseAbs().maxCoeff()));
        }
        CorrelatedSpec custom;
        custom.family = CorrelationFamily::Custom;
        custom.custom_eps = Mat2::Zero();
        CHECK_THROWS_AS(predictor_input(custom, BilinearTransform::identity()), ValidationError);
    }

    TEST_CASE("Type-II FC correlations leave dE_A unchanged") {
        PredictorInput in;
        in.family = StateFamily::TypeII;
        in.n_a = 2;
        in.n_b = 1;
        in.transform = BilinearTransform::fc(0.7, 0.4);
        in.omega_b = 1.3;
        in.c = 0.0;
        const double ref = ledger(in.transform, build_state(in)).dE_A;
        for (double c : {-1.5, -0.4, 0.9, 1.7}) {
            in.c = c;
            CHECK(ledger(in.transform, build_state(in)).dE_A == doctest::Approx(ref).epsilon(1e-12));
        }
    }

    TEST_CASE("Type-I PA correlations leave dE_A unchanged") {
        PredictorInput in;
        in.family = StateFamily::TypeI;
        in.n_a = 3;
        in.n_b = 1;
        in.transform = BilinearTransform::pa(0.6, 1.0);
        const double ref = ledger(in.transform, build_state(in)).dE_A;
        for (double c : {-1.6, 0.3, 1.7}) {
            in.c = c;
            CHECK(ledger(in.transform, build_state(in)).dE_A == doctest::Approx(ref).epsilon(1e-12));
        }
    }

    TEST_CASE("quadrature phases switch the correlations off") {
        for (double ph : {pi / 2, 3 * pi / 2}) {
            PredictorInput t1;
            t1.family = StateFamily::TypeI;
            t1.n_a = 2;
            t1.n_b = 3;
            t1.c = 2.1;
            t1.transform = BilinearTransform::fc(0.8, ph);
            PredictorInput t1z = t1;
            t1z.c = 0;
            const ThermoReport a = ledger(t1.transform, build_state(t1)), b = ledger(t1z.transform, build_state(t1z));
            CHECK(a.dQ == doctest::Approx(b.dQ).epsilon(1e-12));
            CHECK(a.dE_A == doctest::Approx(b.dE_A).epsilon(1e-12));
            CHECK(a.dW_A == doctest::Approx(b.dW_A).epsilon(1e-12));

            PredictorInput t2;
            t2.family = StateFamily::TypeII;
            t2.n_a = 2;
            t2.n_b = 3;
            t2.c = 2.1;
            t2.transform = BilinearTransform::pa(0.5, ph);
            PredictorInput t2z = t2;
            t2z.c = 0;
            const ThermoReport c = ledger(t2.transform, build_state(t2)), d = ledger(t2z.transform, build_state(t2z));
            CHECK(c.dQ == doctest::Approx(d.dQ).epsilon(1e-12));
            CHECK(c.dE_A == doctest::Approx(d.dE_A).epsilon(1e-12));
        }
    }

    TEST_CASE("phase compensation saturates the product-state bounds") {
        Gen gen(53);
        for (int i = 0; i < 200; ++i) {
            const double r = gen.uniform(0, 1.2), ta = gen.uniform(0, 2 * pi), tb = gen.uniform(0, 2 * pi);
            const double na = gen.uniform(0, 5), nb = gen.uniform(0, 5), w = gen.uniform(0.5, 3);
            const TwoModeState s = make_product({na, r, ta, {}, 1.0}, {nb, r, tb, {}, w});
            double phi = std::fmod(0.5 * (ta - tb) + 2 * pi, 2 * pi);
            const double th = gen.uniform(0, pi / 2);
            const ThermoReport fc = ledger(BilinearTransform::fc(th, phi), s);
            const double fc_bound = w * std::pow(std::sin(th), 2) * (na - nb);
            CHECK(std::abs(fc.dQ - fc_bound) <= 1e-9 * std::max(1.0, std::abs(fc_bound)));

            const double psi = std::fmod(0.5 * (ta + tb), 2 * pi);
            const double rr = gen.uniform(0, 1.2);
            const ThermoReport pa = ledger(BilinearTransform::pa(rr, psi), s);
            const double pa_bound = w * std::pow(std::sinh(rr), 2) * (na + nb + 1);
            CHECK(std::abs(pa.dQ - pa_bound) <= 1e-9 * std::max(1.0, std::abs(pa_bound)));
        }
    }

    TEST_CASE("equal-purity FC bath determinant") {
        Gen gen(54);
        for (int i = 0; i < 200; ++i) {
            const double n = gen.uniform(0, 4), ra = gen.uniform(0, 1), rb = gen.uniform(0, 1);
            const double ta = gen.uniform(0, 2 * pi), tb = gen.uniform(0, 2 * pi);
            const double th = gen.uniform(0, pi / 2), ph = gen.uniform(0, 2 * pi);
            const TwoModeState s = make_product({n, ra, ta, {}, 1.0}, {n, rb, tb, {}, 1.0});
            const double det = apply(BilinearTransform::fc(th, ph), s).cov().block_b().det();
            const double fs = fs_factor(ra, rb, ta - tb, ph);
            const double expect = std::pow(n + 0.5, 2) * (1 + 2 * std::pow(std::sin(th) * std::cos(th), 2) * (fs - 1));
            CHECK(std::abs(det - expect) <= 1e-9 * expect);
            CHECK(det >= std::pow(n + 0.5, 2) * (1 - 1e-12));
        }
    }

    TEST_CASE("cooling thresholds mark the sign change of dQ") {
        PredictorInput q;
        q.family = StateFamily::TypeII;
        q.n_a = 2;
        q.n_b = 1;
        q.transform = BilinearTransform::fc(0.5, 0);
        const double c2 = fc_type2_cooling_threshold(2, 1, 0.5);
        REQUIRE(c2 < type2_bound(2, 1));
        q.c = c2;
        CHECK(std::abs(dq_of(q)) < 1e-9);
        q.c = c2 - 1e-4;
        CHECK(dq_of(q) > 0);
        q.c = c2 + 1e-4;
        CHECK(dq_of(q) < 0);

        PredictorInput p;
        p.family = StateFamily::TypeI;
        p.n_a = 20;
        p.n_b = 10;
        p.transform = BilinearTransform::pa(0.5, pi);
        const double c1 = pa_type1_cooling_threshold(20, 10, 0.5);
        REQUIRE(c1 < type1_bound(20, 10));
        p.c = c1;
        CHECK(std::abs(dq_of(p)) < 1e-9);
        p.c = c1 - 1e-4;
        CHECK(dq_of(p) > 0);
        p.c = c1 + 1e-4;
        CHECK(dq_of(p) < 0);

        PredictorInput b;
        b.n_a = 1;
        b.r_a = b.r_b = 0.4;
        b.theta_a = 0.0;
        b.theta_b = pi;
        b.transform = BilinearTransform::fc(pi / 4, 0);
        const double f = fs_factor(0.4, 0.4, -pi, 0.0);
        const double nb = balanced_fc_cooling_threshold(1, f);
        b.n_b = nb;
        CHECK(std::abs(dq_of(b)) < 1e-9);
        b.n_b = nb - 1e-4;
        CHECK(dq_of(b) > 0);
        b.n_b = nb + 1e-4;
        CHECK(dq_of(b) < 0);
    }

    TEST_CASE("PA Type-I cooling window at r = 1 is empty") {
        const double th = pa_type1_cooling_threshold(20, 10, 1.0);
        CHECK(th == doctest::Approx(14.41186970952).epsilon(1e-10));
        CHECK(th > std::sqrt(200.0));
    }
}
