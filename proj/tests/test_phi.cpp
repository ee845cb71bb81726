// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "smallball/errors.hpp"
#include "smallball/phi.hpp"

using namespace smallball;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Phi at z = 1 against arctan antiderivatives") {
    const QuadratureConfig cfg;
    // int dv/(1 + 2 v^2) = pi/sqrt(2)
    CHECK(phi_eval(1.0, {2.0, 2.0, 1.0}, cfg).value.real() == doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-12));
    // int dv/(1 + v^2) = pi; int dv/(4 + v^2) = pi/2
    CHECK(std::abs(phi_single_closed_form(1.0, 2.0, 1.0) - kPi) < 1e-14);
    CHECK(std::abs(phi_single_closed_form(4.0, 2.0, 1.0) - kPi / 2.0) < 1e-14);
}

TEST_CASE("property: equal indices reduce to the single-process closed form with scale 2T") {
    testgen::Gen gen(17);
    const QuadratureConfig cfg;
    for (int i = 0; i < 40; ++i) {
        const Complex z = gen.sector_point(-8.0, 8.0);
        const double alpha = gen.uniform(1.05, 2.0);
        const double horizon = gen.uniform(0.25, 4.0);
        const Complex expected = phi_single_closed_form(z, alpha, 2.0 * horizon);
        const Complex computed = phi_eval(z, {alpha, alpha, horizon}, cfg).value;
        CAPTURE(z);
        CAPTURE(alpha);
        CHECK(std::abs(computed - expected) / std::abs(expected) < 1e-7);
    }
}

TEST_CASE("Phi stays accurate at the modulus limits") {
    const QuadratureConfig cfg;
    const StableParams p{1.5, 1.5, 1.0};
    for (double r : {1.1e-150, 1e-100, 1e100, 0.9e150}) {
        for (double t : {0.0, ContourSpec::kAngle}) {
            const Complex z = std::polar(r, t);
            const Complex expected = phi_single_closed_form(z, 1.5, 2.0);
            CHECK(std::abs(phi_eval(z, p, cfg).value - expected) / std::abs(expected) < 1e-8);
        }
    }
}

TEST_CASE("property: conjugate symmetry") {
    testgen::Gen gen(23);
    const QuadratureConfig cfg;
    for (int i = 0; i < 30; ++i) {
        const StableParams p = gen.collision_params();
        const Complex z = gen.sector_point();
        const Complex a = phi_eval(z, p, cfg).value;
        const Complex b = phi_eval(std::conj(z), p, cfg).value;
        CHECK(std::abs(b - std::conj(a)) <= 1e-9 * std::abs(a));
    }
}

TEST_CASE("property: sector denominator bound |z + A| >= (|z| + A)/4") {
    testgen::Gen gen(29);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = gen.sector_point();
        const double big_a = gen.log_uniform(-4.0, 4.0);
        CHECK(4.0 * std::abs(z + big_a) >= std::abs(z) + big_a);
    }
}

TEST_CASE("property: bounds hold on random sector points") {
    testgen::Gen gen(31);
    const QuadratureConfig cfg;
    for (int i = 0; i < 50; ++i) {
        const StableParams p = gen.collision_params();
        const PhiBoundsReport r = phi_bounds_check(gen.sector_point(), p, cfg);
        CHECK(r.required_hold());
    }
}

TEST_CASE("bounds at the documented points") {
    const QuadratureConfig cfg;
    const PhiBoundsReport a = phi_bounds_check(std::polar(10.0, ContourSpec::kAngle), {1.5, 2.0, 1.0}, cfg);
    CHECK(a.upper_holds);
    CHECK(a.lower_min_form_holds);
    CHECK(a.lower_max_form_holds);
    CHECK(a.cos_arg_holds);
    const PhiBoundsReport b = phi_bounds_check(0.01, {2.0, 2.0, 1.0}, cfg);
    CHECK(b.required_hold());
    CHECK(b.cos_arg == doctest::Approx(1.0));
    // With min alpha < 1, |Phi| stays near the finite I0 at small |z| while the
    // max-form bound grows like |z|^{1/max alpha - 1}.
    const PhiBoundsReport c = phi_bounds_check(1e-3, {0.5, 1.5, 1.0}, cfg);
    CHECK(c.required_hold());
    CHECK_FALSE(c.lower_max_form_holds);
}

TEST_CASE("limit at zero by branch") {
    const QuadratureConfig cfg;
    const PhiLimit split = phi_limit_at_zero({0.5, 1.5, 1.0}, cfg);
    CHECK(split.branch == BranchKind::MinBelowOne);
    REQUIRE(split.value);
    // int_R dv/(|v|^{1/2} + |v|^{3/2}) = 2 int_0^inf 2 du/(1+u^2) = 2 pi
    CHECK(*split.value == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK_FALSE(phi_limit_at_zero({1.5, 1.5, 1.0}, cfg).value);
    const PhiLimit boundary = phi_limit_at_zero({1.0, 2.0, 1.0}, cfg);
    CHECK(boundary.branch == BranchKind::MinAtLeastOne);
    CHECK_FALSE(boundary.value);

    testgen::Gen gen(37);
    for (int i = 0; i < 10; ++i) {
        const StableParams p{gen.uniform(0.1, 0.95), gen.uniform(1.05, 2.0), gen.uniform(0.5, 2.0)};
        CHECK(*phi_limit_at_zero(p, cfg).value == doctest::Approx(phi_limit_closed_form(p)).epsilon(1e-8));
        const double i0 = phi_limit_closed_form(p);
        const double gap = std::abs(phi_eval(std::polar(1e-60, 2.0), p, cfg).value - i0);
        CHECK(gap <= std::max(1e-9, 10.0 * std::pow(1e-60, 1.0 / p.min_alpha() - 1.0)) * i0);
    }
    // Phi - I0 ~ z^{1/a - 1} along the sector, a = min alpha
    for (double low : {0.85, 0.9, 0.95}) {
        const StableParams p{low, 1.5, 1.0};
        const double i0 = phi_limit_closed_form(p);
        const double gap30 = std::abs(phi_eval(std::polar(1e-30, 2.0), p, cfg).value - i0);
        const double gap60 = std::abs(phi_eval(std::polar(1e-60, 2.0), p, cfg).value - i0);
        CHECK(gap60 / gap30 == doctest::Approx(std::pow(1e-30, 1.0 / low - 1.0)).epsilon(1e-3));
    }
}

TEST_CASE("domain errors") {
    const QuadratureConfig cfg;
    const StableParams p{2.0, 2.0, 1.0};
    CHECK_THROWS_AS(phi_eval(0.0, p, cfg), Error);
    CHECK_THROWS_AS(phi_eval(std::polar(1.0, 2.5), p, cfg), Error);
    CHECK_THROWS_AS(phi_eval(1e-200, p, cfg), Error);
    CHECK_THROWS_AS(phi_eval(1.0, {0.5, 0.9, 1.0}, cfg), Error);
    CHECK_THROWS_AS(phi_eval(1.0, {2.5, 1.5, 1.0}, cfg), Error);
    CHECK_THROWS_AS(phi_single_closed_form(-1.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(phi_single_closed_form(1.0, 1.0, 1.0), Error);
    CHECK(branch_of({1.0, 2.0, 1.0}) == BranchKind::MinAtLeastOne);
    CHECK(branch_of({0.99, 2.0, 1.0}) == BranchKind::MinBelowOne);
}
