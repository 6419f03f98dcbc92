#include "doctest.h"

#include "obliq/decompose.hpp"
#include "obliq/l2model.hpp"
#include "test_support.hpp"

using namespace obliq;
using obliq::testing::Rng;

TEST_CASE("build: structure of L and M") {
    L2ModelConfig config{1, RealVec::Ones(1)};
    L2Model model = build_l2(config);
    CHECK(model.space->dim() == 2);
    CHECK(model.l.dim() == 1);
    CHECK(model.m.dim() == 1);
    // L = span{e1}; M = span{(e1 + e2)/sqrt(2)}.
    CHECK(std::abs(std::abs(model.l.basis()(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(model.l.basis()(1, 0)) < 1e-12);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(model.m.basis()(0, 0)) - inv_sqrt2) < 1e-12);
    CHECK(std::abs(std::abs(model.m.basis()(1, 0)) - inv_sqrt2) < 1e-12);

    L2ModelConfig config2{2, RealVec(2)};
    config2.thetas << 2.0, 3.0;
    L2Model model2 = build_l2(config2);
    // M columns proportional to (1,2,0,0) and (0,0,1,3), in either order.
    ColVec first_pair, second_pair;
    for (int col = 0; col < 2; ++col) {
        const ColVec v = model2.m.basis().col(col);
        if (std::abs(v(0)) > 1e-8) {
            first_pair = v;
        } else {
            second_pair = v;
        }
    }
    REQUIRE(first_pair.size() == 4);
    REQUIRE(second_pair.size() == 4);
    CHECK(std::abs(first_pair(1) / first_pair(0) - Complex(2.0)) < 1e-12);
    CHECK(std::abs(first_pair(2)) + std::abs(first_pair(3)) < 1e-12);
    CHECK(std::abs(second_pair(3) / second_pair(2) - Complex(3.0)) < 1e-12);
    CHECK(std::abs(second_pair(0)) + std::abs(second_pair(1)) < 1e-12);
}

TEST_CASE("bad thetas are rejected") {
    L2ModelConfig zero{1, RealVec::Zero(1)};
    CHECK_THROWS_AS(build_l2(zero), BadTheta);
    L2ModelConfig mismatch{2, RealVec::Ones(1)};
    CHECK_THROWS_AS(build_l2(mismatch), BadTheta);
    L2ModelConfig none{0, RealVec(0)};
    CHECK_THROWS_AS(build_l2(none), BadTheta);
}

TEST_CASE("analytic inclination closed form") {
    L2ModelConfig ones{3, RealVec::Ones(3)};
    CHECK(analytic_inclination(ones) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    L2ModelConfig two_three{2, RealVec(2)};
    two_three.thetas << 2.0, 3.0;
    CHECK(analytic_inclination(two_three) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));

    L2ModelConfig huge{1, RealVec(1)};
    huge.thetas << 1e8;
    CHECK(analytic_inclination(huge) < 1e-7);
}

TEST_CASE("analytic decomposition closed forms") {
    L2ModelConfig config{1, RealVec(1)};
    config.thetas << 2.0;
    L2Model model = build_l2(config);
    Vector u{model.space, (ColVec(2) << 1.0, 1.0).finished()};
    auto [v, w] = analytic_decompose(config, u);
    CHECK(std::abs(v.coeffs(0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(v.coeffs(1)) < 1e-15);
    CHECK(std::abs(w.coeffs(0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(w.coeffs(1) - Complex(1.0)) < 1e-15);

    // u in L stays put.
    Vector ul{model.space, (ColVec(2) << 3.0, 0.0).finished()};
    auto [v2, w2] = analytic_decompose(config, ul);
    CHECK((v2.coeffs - ul.coeffs).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(w2.coeffs.cwiseAbs().maxCoeff() < 1e-15);

    // The 45 degree example in closed form.
    L2ModelConfig c1{1, RealVec::Ones(1)};
    Vector x{build_l2(c1).space, (ColVec(2) << 0.0, 1.0).finished()};
    auto [v3, w3] = analytic_decompose(c1, x);
    CHECK(std::abs(v3.coeffs(0) - Complex(-1.0)) < 1e-15);
    CHECK(std::abs(w3.coeffs(0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(w3.coeffs(1) - Complex(1.0)) < 1e-15);
}

TEST_CASE("analytic extension closed forms") {
    L2ModelConfig config{1, RealVec(1)};
    config.thetas << 2.0;
    Vector tilde = analytic_extend(config, RealVec::Ones(1));
    CHECK(std::abs(tilde.coeffs(0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(tilde.coeffs(1) - Complex(-0.5)) < 1e-15);

    Vector zero = analytic_extend(config, RealVec::Zero(1));
    CHECK(zero.coeffs.cwiseAbs().maxCoeff() == 0.0);

    L2ModelConfig pair{2, RealVec::Ones(2)};
    Vector t2 = analytic_extend(pair, RealVec::Ones(2));
    CHECK((t2.coeffs - (ColVec(4) << 1, -1, 1, -1).finished())
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    // Bound equality: |a_tilde| = 2 = sqrt(2) * |a|.
    CHECK(t2.coeffs.norm() == doctest::Approx(2.0));
}

TEST_CASE("analytic extension annihilates M and represents f on L") {
    Rng rng(99);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 1 + trial % 4;
        L2ModelConfig config{n, RealVec(n)};
        RealVec a(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            config.thetas(i) = unif(rng) >= 0 ? 0.5 + trial * 0.3 : -0.7;
            a(i) = unif(rng);
        }
        L2Model model = build_l2(config);
        Vector tilde = analytic_extend(config, a);
        Vector tilde_in_model{model.space, tilde.coeffs};

        // Vanishes against every M basis vector.
        for (Eigen::Index j = 0; j < model.m.dim(); ++j) {
            Vector mb{model.space, model.m.basis().col(j)};
            CHECK(std::abs(inner(mb, tilde_in_model)) < 1e-12);
        }
        // Matches f on L: (v, a_tilde) = sum of odd coordinates times a.
        Vector v{model.space, model.l.basis() *
                                  testing::random_complex_vec(n, rng)};
        Complex expected = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) expected += v.coeffs(2 * i) * a(i);
        CHECK(std::abs(inner(v, tilde_in_model) - expected) < 1e-12);

        // Norm bound sqrt((theta + 1) / theta) |a|.
        const double theta = config.thetas.cwiseAbs2().minCoeff();
        CHECK(tilde.coeffs.norm() <=
              std::sqrt((theta + 1.0) / theta) * a.norm() * (1 + 1e-12));
    }
}

TEST_CASE("engine agreement across random configs") {
    Rng rng(123);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 50);
        L2ModelConfig config{n, RealVec(n)};
        for (Eigen::Index i = 0; i < n; ++i) {
            config.thetas(i) = mag(rng) * (rng() % 2 ? 1.0 : -1.0);
        }
        L2Model model = build_l2(config);
        const double engine = inclination(model.l, model.m).c;
        CHECK(std::abs(engine - analytic_inclination(config)) <= 1e-10);
    }
}

TEST_CASE("analytic decomposition passes the engine bounds") {
    Rng rng(321);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 1 + trial % 6;
        L2ModelConfig config{n, RealVec(n)};
        for (Eigen::Index i = 0; i < n; ++i) {
            config.thetas(i) = 0.4 + 0.5 * (trial % 4) + 0.1 * i;
        }
        L2Model model = build_l2(config);
        Vector u{model.space, testing::random_complex_vec(2 * n, rng)};
        auto [v, w] = analytic_decompose(config, u);
        CHECK((v.coeffs + w.coeffs - u.coeffs).cwiseAbs().maxCoeff() <
              1e-15 * u.coeffs.norm());

        const double c = analytic_inclination(config);
        const double amp = 1.0 / std::sqrt(1.0 - c * c);
        CHECK(norm(v) <= amp * norm(u) * (1 + 1e-12));
        CHECK(norm(w) <= amp * norm(u) * (1 + 1e-12));
    }
}

TEST_CASE("one_over_n family") {
    L2ModelConfig config = one_over_n_config(4);
    CHECK(config.thetas(0) == 1.0);
    CHECK(config.thetas(3) == 0.25);
    CHECK(analytic_inclination(config) ==
          doctest::Approx(1.0 / std::sqrt(1.0 + 1.0 / 16.0)));
}
