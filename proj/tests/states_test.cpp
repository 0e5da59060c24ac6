#include <doctest.h>

#include <string>

#include "gthermo/errors.hpp"
#include "gthermo/states.hpp"
#include "support.hpp"

using namespace gt_test;

TEST_SUITE("states") {
    TEST_CASE("single-mode examples") {
        const auto [vac, vm] = make_single_mode({});
        CHECK((vac.matrix() - 0.5 * Mat2::Identity()).norm() == 0.0);
        CHECK(vm.norm() == 0.0);

        const auto [sq, sm] = make_single_mode({1.0, 0.5, 0.0, {}, 1.0});
        CHECK(sq.matrix()(0, 0) == doctest::Approx(1.5 * std::exp(1.0)).epsilon(1e-14));
        CHECK(sq.matrix()(1, 1) == doctest::Approx(1.5 * std::exp(-1.0)).epsilon(1e-14));
        CHECK(sq.det() == doctest::Approx(2.25).epsilon(1e-13));

        const auto [coh, cm] = make_single_mode({0.0, 0.0, 0.0, {1.0, 1.0}, 1.0});
        CHECK(coh.det() == doctest::Approx(0.25));
        CHECK(cm(0) == doctest::Approx(std::sqrt(2.0)));
        CHECK(cm(1) == doctest::Approx(std::sqrt(2.0)));

        // Off-diagonal follows the operator phase of exp(½ζa†² − ½ζ*a²).
        const auto [ph, pm] = make_single_mode({0.0, 0.5, pi / 2, {}, 1.0});
        CHECK(ph.matrix()(0, 1) == doctest::Approx(0.5 * std::sinh(1.0)).epsilon(1e-14));
    }

    TEST_CASE("range violations") {
        CHECK_THROWS_AS(make_single_mode({-0.1, 0, 0, {}, 1}), DomainError);
        CHECK_THROWS_AS(make_single_mode({0, -0.1, 0, {}, 1}), DomainError);
        CHECK_THROWS_AS(make_single_mode({0, 0.1, 2 * pi + 0.1, {}, 1}), DomainError);
        CHECK_THROWS_AS(make_single_mode({0, 0, 0, {}, 0}), DomainError);
        CHECK_THROWS_AS(make_tmsv(-1, 1, 1), DomainError);
    }

    TEST_CASE("product states") {
        const TwoModeState t = make_product({2, 0, 0, {}, 1}, {1, 0, 0, {}, 1});
        CHECK(t.cov().det() == doctest::Approx(2.5 * 2.5 * 1.5 * 1.5));
        CHECK(t.cov().corr().norm() == 0.0);
        const SingleModeSpec a{1, 0.3, 1.0, {0.2, -0.4}, 1.5}, b{0.5, 0.7, 2.0, {}, 2.5};
        const TwoModeState p = make_product(a, b);
        CHECK((p.cov().block_a().matrix() - make_single_mode(a).first.matrix()).norm() == 0.0);
        CHECK((p.cov().block_b().matrix() - make_single_mode(b).first.matrix()).norm() == 0.0);
        CHECK(p.omega_b() == 2.5);
    }

    TEST_CASE("correlation bounds name the violated inequality") {
        CorrelatedSpec s;
        s.family = CorrelationFamily::TypeI;
        s.n_a = 20;
        s.n_b = 10;
        s.c = 14.14;
        CHECK_NOTHROW(make_type1(s));
        s.c = 14.15;
        try {
            make_type1(s);
            FAIL("accepted c above the Type-I bound");
        } catch (const CorrelationBoundViolation& e) {
            CHECK(std::string(e.what()).find("sqrt(N_A N_B)") != std::string::npos);
        }

        CorrelatedSpec q;
        q.family = CorrelationFamily::TypeII;
        q.n_a = q.n_b = 1;
        q.c = std::sqrt(2.0);
        const TwoModeState sat = make_type2(q);
        CHECK(symplectic_spectrum(sat.cov()).d_minus == doctest::Approx(0.5).epsilon(1e-9));
        q.c = 1.415;
        try {
            make_type2(q);
            FAIL("accepted c above the Type-II bound");
        } catch (const CorrelationBoundViolation& e) {
            CHECK(std::string(e.what()).find("N_A (1 + N_B)") != std::string::npos);
        }
        q.n_a = 3;
        q.n_b = 1;
        q.c = 2.1;
        try {
            make_type2(q);
            FAIL("accepted c above the Type-II bound");
        } catch (const CorrelationBoundViolation& e) {
            CHECK(std::string(e.what()).find("N_B (1 + N_A)") != std::string::npos);
        }
    }

    TEST_CASE("saturated Type-I bound is a pure-limit state") {
        CorrelatedSpec s;
        s.n_a = 20;
        s.n_b = 10;
        s.c = std::sqrt(200.0);
        CHECK(symplectic_spectrum(make_type1(s).cov()).d_minus == doctest::Approx(0.5).epsilon(1e-9));
    }

    TEST_CASE("zero correlation equals the thermal product") {
        for (auto fam : {CorrelationFamily::TypeI, CorrelationFamily::TypeII}) {
            CorrelatedSpec s;
            s.family = fam;
            s.n_a = 2;
            s.n_b = 0.5;
            const TwoModeState c = make_correlated(s);
            const TwoModeState p = make_product({2, 0, 0, {}, 1}, {0.5, 0, 0, {}, 1});
            CHECK((c.cov().matrix() - p.cov().matrix()).norm() == 0.0);
        }
    }

    TEST_CASE("TMSV") {
        CHECK((make_tmsv(0, 1, 1).cov().matrix() - 0.5 * Mat4::Identity()).norm() == 0.0);
        const auto sp = symplectic_spectrum(make_tmsv(0.5, 1, 1).cov());
        CHECK(sp.d_tilde_minus == doctest::Approx(std::exp(-1.0) / 2).epsilon(1e-12));
        CHECK(sp.d_plus == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(is_entangled(make_tmsv(0.05, 1, 1).cov()));
        CHECK_FALSE(is_entangled(make_tmsv(0.0, 1, 1).cov()));
        Gen gen(31);
        for (int i = 0; i < 50; ++i) {
            const double r = gen.uniform(0, 2);
            const TwoModeState pa = apply(BilinearTransform::pa(r, 0), make_tmsv(0, 1, 1));
            CHECK((pa.cov().matrix() - make_tmsv(r, 1, 1).cov().matrix()).cwiseAbs().maxCoeff() < 1e-10 * std::cosh(2 * r));
        }
    }

    TEST_CASE("custom correlations go through the physicality gate") {
        CorrelatedSpec s;
        s.family = CorrelationFamily::Custom;
        s.n_a = s.n_b = 1;
        Mat2 e;
        e << 0.5, 0.2, -0.1, 0.3;
        s.custom_eps = e;
        CHECK_NOTHROW(make_correlated(s));
        s.custom_eps = Mat2(2.0 * Mat2::Identity());
        CHECK_THROWS_AS(make_correlated(s), NonPhysical);
        s.custom_eps.reset();
        CHECK_THROWS_AS(make_correlated(s), DomainError);
    }

    TEST_CASE("F_S and G_S examples") {
        CHECK(fs_factor(0, 0, 1.0, 0.3) == doctest::Approx(1.0));
        CHECK(gs_factor(0, 0, 1.0, 0.3) == doctest::Approx(1.0));
        CHECK(fs_factor(0.6, 0.6, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fs_factor(0.6, 0.2, 0.0, 0.0) == doctest::Approx(std::cosh(0.8)).epsilon(1e-12));
        CHECK(fs_factor(0.6, 0.2, pi, 0.0) == doctest::Approx(std::cosh(1.6)).epsilon(1e-12));
    }

    TEST_CASE("property: F_S and G_S are at least one") {
        Gen gen(32);
        for (int i = 0; i < 2000; ++i) {
            const double ra = gen.uniform(0, 2), rb = gen.uniform(0, 2);
            CHECK(fs_factor(ra, rb, gen.uniform(-2 * pi, 2 * pi), gen.uniform(0, 2 * pi)) >= 1.0 - 1e-12);
            CHECK(gs_factor(ra, rb, gen.uniform(0, 4 * pi), gen.uniform(0, 2 * pi)) >= 1.0 - 1e-12);
        }
    }

    TEST_CASE("property: every generated recipe is physical with det = product of local purities for products") {
        Gen gen(33);
        for (int i = 0; i < 1000; ++i) {
            const StateRecipe r = gen.recipe();
            const TwoModeState s = make_state(r);
            CHECK(s.cov().is_physical());
            if (const auto* p = std::get_if<ProductSpec>(&r)) {
                const double expect = std::pow((p->a.n + 0.5) * (p->b.n + 0.5), 2);
                CHECK(rel_err(s.cov().det(), expect) < 1e-9 * std::max(1.0, expect));
            }
        }
    }
}
