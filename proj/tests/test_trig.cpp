#include "doctest.h"

#include <numbers>

#include "obliq/trig.hpp"
#include "test_support.hpp"

using namespace obliq;
using obliq::testing::adaptive_simpson;

namespace {

constexpr double kPi = std::numbers::pi;

double factor_value(const TrigFactor& f, double x) {
    return f.kind == TrigFactor::Sin ? std::sin(f.k * kPi * x)
                                     : std::cos(f.k * kPi * x);
}

// Quadrature oracle for the closed-form 1D overlaps.
double overlap_by_quadrature(const TrigFactor& f, const TrigFactor& g) {
    return adaptive_simpson(
        [&](double x) { return factor_value(f, x) * factor_value(g, x); }, 0.0,
        1.0, 1e-14);
}

} // namespace

TEST_CASE("named overlaps") {
    CHECK(trig_overlap({TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}) == 0.5);
    CHECK(trig_overlap({TrigFactor::Sin, 1}, {TrigFactor::Cos, 1}) == 0.0);
    CHECK(trig_overlap({TrigFactor::Sin, 1}, {TrigFactor::Cos, 0}) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-15));
    CHECK(trig_overlap({TrigFactor::Cos, 0}, {TrigFactor::Cos, 0}) == 1.0);
    CHECK(trig_overlap({TrigFactor::Cos, 2}, {TrigFactor::Cos, 2}) == 0.5);
    CHECK(trig_overlap({TrigFactor::Sin, 2}, {TrigFactor::Sin, 3}) == 0.0);
}

TEST_CASE("overlaps agree with quadrature over the mode range") {
    std::vector<TrigFactor> factors;
    for (int k = 1; k <= 4; ++k) factors.push_back({TrigFactor::Sin, k});
    for (int k = 0; k <= 4; ++k) factors.push_back({TrigFactor::Cos, k});
    for (const auto& f : factors) {
        for (const auto& g : factors) {
            const double exact = trig_overlap(f, g);
            const double quad = overlap_by_quadrature(f, g);
            CHECK(std::abs(exact - quad) < 1e-12);
        }
    }
}

TEST_CASE("differentiation rules") {
    TrigTensor t(1);
    t.add_term({{TrigFactor::Sin, 1}}, 1.0);
    TrigTensor d = differentiate(t, 0);
    REQUIRE(d.terms().size() == 1);
    const auto& [key, coeff] = *d.terms().begin();
    CHECK(key[0].kind == TrigFactor::Cos);
    CHECK(key[0].k == 1);
    CHECK(coeff == doctest::Approx(kPi));

    TrigTensor constant(1);
    constant.add_term({{TrigFactor::Cos, 0}}, 3.0);
    CHECK(differentiate(constant, 0).empty());

    // Second derivative of sin(k pi x) is -k^2 pi^2 sin(k pi x).
    TrigTensor s3(1);
    s3.add_term({{TrigFactor::Sin, 3}}, 1.0);
    TrigTensor dd = differentiate(differentiate(s3, 0), 0);
    REQUIRE(dd.terms().size() == 1);
    CHECK(dd.terms().begin()->second == doctest::Approx(-9.0 * kPi * kPi));
}

TEST_CASE("zero coefficients are never retained") {
    TrigTensor t(1);
    t.add_term({{TrigFactor::Sin, 1}}, 2.5);
    t.add_term({{TrigFactor::Sin, 1}}, -2.5);
    CHECK(t.empty());
    t.add_term({{TrigFactor::Sin, 2}}, 0.0);
    CHECK(t.empty());
}

TEST_CASE("grad, div, rot on the standard 2D example") {
    // phi = sin(pi x) sin(pi y)
    TrigTensor phi(2);
    phi.add_term({{TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}}, 1.0);
    TrigField grad = apply_grad(phi);
    REQUIRE(grad.components.size() == 2);
    CHECK(grad.components[0].terms().begin()->second == doctest::Approx(kPi));
    CHECK(grad.components[0].terms().begin()->first[0].kind == TrigFactor::Cos);
    CHECK(grad.components[0].terms().begin()->first[1].kind == TrigFactor::Sin);

    // Laplacian: -2 pi^2 phi.
    TrigTensor lap = apply_div(grad);
    REQUIRE(lap.terms().size() == 1);
    CHECK(lap.terms().begin()->second == doctest::Approx(-2.0 * kPi * kPi));

    // rot grad = 0 with exactly cancelled coefficients.
    TrigField rg = apply_rot(grad);
    CHECK(max_abs_coeff(rg) == 0.0);

    // u = (sin sin, 0): div and rot with the documented values.
    TrigField u = make_field(2);
    u.components[0] = phi;
    TrigTensor div_u = apply_div(u);
    TrigField rot_u = apply_rot(u);
    CHECK(l2_norm_sq(div_u) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-14));
    REQUIRE(rot_u.components.size() == 1);
    CHECK(l2_norm_sq(rot_u) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-14));
    // And the gradient energy is their sum.
    CHECK(l2_norm_sq(apply_component_grad(u)) ==
          doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("rot grad vanishes exactly in 3D too") {
    TrigTensor phi(3);
    phi.add_term(
        {{TrigFactor::Sin, 2}, {TrigFactor::Sin, 1}, {TrigFactor::Sin, 3}},
        0.7);
    phi.add_term(
        {{TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}},
        -1.3);
    TrigField rg = apply_rot(apply_grad(phi));
    CHECK(max_abs_coeff(rg) == 0.0);
}

TEST_CASE("l2 inner products multiply across axes") {
    // sin(pi x) sin(pi y) against itself: (1/2) * (1/2).
    TrigTensor t(2);
    t.add_term({{TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}}, 2.0);
    CHECK(l2_norm_sq(t) == doctest::Approx(1.0));

    // Mixed-term tensors: (sin1 + cos0 on axis 0) times sin1 on axis 1.
    TrigTensor mix(2);
    mix.add_term({{TrigFactor::Sin, 1}, {TrigFactor::Sin, 1}}, 1.0);
    mix.add_term({{TrigFactor::Cos, 0}, {TrigFactor::Sin, 1}}, 1.0);
    // |mix|^2 = (1/2)(1/2) + 2 * (2/pi)(1/2) + 1 * (1/2)
    const double expect = 0.25 + 2.0 / kPi + 0.5;
    CHECK(l2_norm_sq(mix) == doctest::Approx(expect).epsilon(1e-14));
}
