// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "generators.hpp"
#include "smallball/errors.hpp"
#include "smallball/smallball.hpp"
#include "smallball/stable_mc.hpp"

using namespace smallball;

namespace {
constexpr double kPi = std::numbers::pi;

/// E e^{-lambda L} for L = sqrt(T)|N|/2: 2 e^{a^2/2} P(N > a), a = lambda sqrt(T)/2.
double brownian_laplace(double lambda, double horizon) {
    const double a = 0.5 * lambda * std::sqrt(horizon);
    if (a < 20.0) return std::exp(0.5 * a * a) * std::erfc(a / std::numbers::sqrt2);
    const double q = 1.0 / (a * a);
    return std::sqrt(2.0 / kPi) / a * (1.0 - q * (1.0 - 3.0 * q * (1.0 - 5.0 * q * (1.0 - 7.0 * q))));
}
}  // namespace

TEST_CASE("local time closed form") {
    CHECK(local_time_constant(2.0, 1.0) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK(local_time_constant(2.0, 4.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(local_time_constant(1.0, 1.0), Error);
    CHECK_THROWS_AS(local_time_constant(2.5, 1.0), Error);
}

TEST_CASE("single-process ray constant against the closed form") {
    const QuadratureConfig cfg;
    for (double alpha : {1.2, 1.5, 1.8, 2.0}) {
        for (double horizon : {1.0, 2.0}) {
            const QuadratureResult r = local_time_ray_constant(alpha, horizon, cfg);
            CHECK(r.converged);
            CHECK(r.value.real() == doctest::Approx(local_time_constant(alpha, horizon)).epsilon(1e-8));
        }
    }
}

TEST_CASE("Brownian pair constant 2 sqrt(2/(pi T))") {
    const QuadratureConfig cfg;
    for (double horizon : {1.0, 4.0}) {
        const SmallBallResult r = smallball_constant({2.0, 2.0, horizon}, cfg);
        CHECK(r.converged);
        CHECK(r.branch == BranchKind::MinAtLeastOne);
        CHECK(r.correction == 0.0);
        CHECK(r.constant == doctest::Approx(2.0 * std::sqrt(2.0 / (kPi * horizon))).epsilon(1e-10));
    }
}

TEST_CASE("ray integrand") {
    const QuadratureConfig cfg;
    const StableParams p{2.0, 2.0, 1.0};
    for (double r : {1e-3, 0.5, 1.0, 7.0, 30.0}) {
        const Complex z = std::polar(r, ContourSpec::kAngle);
        const double closed = ray_integrand_from(phi_single_closed_form(z, 2.0, 2.0), r);
        CHECK(std::abs(ray_integrand(r, p, cfg) - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
    }
    const double at50 = std::abs(ray_integrand(50.0, p, cfg));
    CHECK(at50 < std::exp(-50.0 / std::numbers::sqrt2) * 50.0 * 50.0);
    CHECK(std::isfinite(ray_integrand(1.0, {1.5, 1.5, 1.0}, cfg)));
}

TEST_CASE("correction term") {
    const QuadratureConfig cfg;
    CHECK(correction_term({1.5, 2.0, 1.0}, cfg) == 0.0);
    // int dv/(|v|^{1/2} + |v|^{3/2}) = 2 pi
    CHECK(correction_term({0.5, 1.5, 1.0}, cfg) == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(correction_term({0.5, 1.5, 3.0}, cfg) == doctest::Approx(0.75).epsilon(1e-10));
    const double c99 = correction_term({0.99, 1.5, 1.0}, cfg);
    const double c999 = correction_term({0.999, 1.5, 1.0}, cfg);
    CHECK(c99 > c999);
    CHECK(c999 > 0.0);
    CHECK(c999 < 0.01);
}

TEST_CASE("property: ray constant equals the contour constant, positive, in both branches") {
    testgen::Gen gen(47);
    const QuadratureConfig cfg;
    for (int i = 0; i < 12; ++i) {
        StableParams p = gen.collision_params();
        if (std::abs(p.min_alpha() - 1.0) < 0.05) continue;
        const SmallBallResult r = smallball_constant(p, cfg);
        CAPTURE(p.alpha1);
        CAPTURE(p.alpha2);
        CHECK(r.converged);
        CHECK(r.constant > 0.0);
        CHECK(r.constant == doctest::Approx(r.ray_part + r.correction));
        CHECK((r.correction == 0.0) == (r.branch == BranchKind::MinAtLeastOne));
        CHECK(contour_constant(p, ContourSpec{}, cfg).value.real() == doctest::Approx(r.constant).epsilon(1e-8));
    }
}

TEST_CASE("branch continuity as min alpha rises to 1") {
    const QuadratureConfig cfg;
    double previous_ray = 0.0;
    for (double low : {0.9, 0.95, 0.98}) {
        const SmallBallResult r = smallball_constant({low, 1.5, 1.0}, cfg);
        if (low <= 0.95) CHECK(r.converged);
        if (previous_ray != 0.0) CHECK(std::abs(r.ray_part - previous_ray) < 0.2);
        previous_ray = r.ray_part;
    }
    const SmallBallResult above = smallball_constant({1.02, 1.5, 1.0}, cfg);
    CHECK(above.correction == 0.0);
    CHECK_THROWS_AS(smallball_constant({0.5, 0.9, 1.0}, cfg), Error);
}

TEST_CASE("Laplace transform against the exact Brownian law") {
    const QuadratureConfig cfg;
    const StableParams p{2.0, 2.0, 1.0};
    for (double lambda : {1e-6, 0.1, 1.0, 10.0, 1e3}) {
        const LaplacePoint point = laplace_transform(lambda, p, ContourSpec{}, cfg);
        CHECK(point.value > 0.0);
        CHECK(point.value <= 1.0);
        CHECK(point.imaginary_residue < 10.0 * cfg.abs_tol);
        CHECK(point.scaled == doctest::Approx(lambda * point.value));
        CHECK(point.value == doctest::Approx(brownian_laplace(lambda, 1.0)).epsilon(1e-9));
        CHECK(point.resummation_radius > 0.0);
    }
    CHECK(laplace_transform(1e-6, p, ContourSpec{}, cfg).value > 0.999);
    CHECK_THROWS_AS(laplace_transform(0.0, p, ContourSpec{}, cfg), Error);
}

TEST_CASE("Laplace transform moment series at lambda = 1") {
    const QuadratureConfig cfg;
    const StableParams p{2.0, 2.0, 1.0};
    const double m1 = moment_formula(1, p, cfg).value.real();
    const double m2 = moment_formula(2, p, cfg).value.real();
    const double m3 = 2.0 * std::sqrt(2.0 / kPi) / 8.0;
    const double value = laplace_transform(1.0, p, ContourSpec{}, cfg).value;
    CHECK(std::abs(value - (1.0 - m1 + 0.5 * m2)) <= m3 / 6.0);
}

TEST_CASE("property: Laplace transform is decreasing and radius invariant") {
    testgen::Gen gen(53);
    const QuadratureConfig cfg;
    for (int i = 0; i < 4; ++i) {
        const StableParams p = gen.collision_params();
        if (std::abs(p.min_alpha() - 1.0) < 0.05) continue;
        double previous = 1.0;
        for (double lambda : {0.01, 0.3, 3.0, 30.0, 300.0}) {
            const double value = laplace_transform(lambda, p, ContourSpec{}, cfg).value;
            CHECK(value < previous);
            previous = value;
            for (double radius : {0.5, 2.0}) {
                CHECK(std::abs(laplace_transform(lambda, p, ContourSpec{radius}, cfg).value - value) < 1e-8);
            }
        }
    }
}

TEST_CASE("Laplace asymptote approaches the constant") {
    const QuadratureConfig cfg;
    const std::vector<double> lambdas{1e3, 3e3, 1e4, 3e4, 1e5};
    for (const StableParams& p : {StableParams{2.0, 2.0, 1.0}, StableParams{1.5, 1.8, 1.0}}) {
        const LaplaceAsymptote a = laplace_asymptote(lambdas, p, ContourSpec{}, cfg);
        CHECK(a.limit.monotone);
        CHECK(a.limit.limit == doctest::Approx(smallball_constant(p, cfg).constant).epsilon(1e-3));
    }
}

TEST_CASE("resummation radius") {
    const QuadratureConfig cfg;
    // b = 2, T = 1: (4 lambda/pi * pi)^2 = 16 lambda^2
    CHECK(resummation_radius(1.0, {2.0, 2.0, 1.0}, cfg) == doctest::Approx(16.0).epsilon(1e-10));
    const StableParams p{1.5, 1.8, 1.0};
    const double radius = resummation_radius(10.0, p, cfg);
    for (double t : {-ContourSpec::kAngle, 0.0, 1.0, ContourSpec::kAngle}) {
        const Complex phi = phi_eval(std::polar(radius, t), p, cfg).value;
        CHECK(10.0 * std::abs(phi) / (2.0 * kPi) <= 0.5);
    }
}
