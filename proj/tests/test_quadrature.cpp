// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "smallball/errors.hpp"
#include "smallball/extrapolate.hpp"
#include "smallball/quadrature.hpp"

using namespace smallball;

TEST_CASE("finite integrals against antiderivatives") {
    const QuadratureConfig cfg;
    const auto r = integrate_finite([](double x) { return Complex{std::exp(-x)}; }, 0.0, 1.0, cfg);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(r.error_estimate <= cfg.target(r.value.real()));

    const auto s = integrate_finite([](double x) { return Complex{1.0 / std::sqrt(x)}; }, 0.0, 1.0, cfg, -0.5);
    CHECK(s.value.real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("semi-infinite and real-line integrals") {
    const QuadratureConfig cfg;
    const auto e = integrate_semi_infinite_decaying([](double r) { return Complex{std::exp(-r)}; }, 0.0, 1.0, cfg);
    CHECK(e.value.real() == doctest::Approx(1.0).epsilon(1e-10));

    const auto lorentz = integrate_real_line_even([](double v) { return Complex{1.0 / (1.0 + v * v)}; }, cfg);
    CHECK(lorentz.value.real() == doctest::Approx(std::numbers::pi).epsilon(1e-10));

    const auto gauss = integrate_real_line_even([](double v) { return Complex{std::exp(-v * v)}; }, cfg);
    CHECK(gauss.value.real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));

    // int_R dv/(1+|v|^3) = 4 pi / (3 sqrt 3)
    const auto cubic = integrate_real_line_even(
        [](double v) { return Complex{1.0 / (1.0 + std::pow(std::abs(v), 3.0))}; }, cfg);
    CHECK(cubic.value.real() == doctest::Approx(4.0 * std::numbers::pi / (3.0 * std::sqrt(3.0))).epsilon(1e-10));

    // int_0^inf r^{1/2} e^{-r} dr = Gamma(3/2)
    const auto g = integrate_semi_infinite_decaying([](double r) { return Complex{std::sqrt(r) * std::exp(-r)}; },
                                                    0.0, 1.0, cfg, 0.5);
    CHECK(g.value.real() == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-8));
}

TEST_CASE("exponential tails with slow complex rates") {
    const QuadratureConfig cfg;
    const Complex rate{0.05, 0.3};
    const auto r = integrate_exponential_tail([rate](double t) { return std::exp(-rate * t); }, 0.0,
                                              TailDirection::Up, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0 / rate) < 1e-8);
    // Algebraic decay is not exponential: reported, not hidden.
    const auto bad = integrate_exponential_tail([](double t) { return Complex{1.0 / (1.0 + t * t)}; }, 0.0,
                                                TailDirection::Up, cfg, 1e3);
    CHECK_FALSE(bad.converged);
}

TEST_CASE("errors") {
    const QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate_finite([](double) { return Complex{}; }, 1.0, 0.0, cfg), Error);
    CHECK_THROWS_AS(integrate_finite([](double) { return Complex{std::nan("")}; }, 0.0, 1.0, cfg), Error);
    QuadratureConfig broken;
    broken.abs_tol = -1.0;
    CHECK_THROWS_AS(broken.validate(), Error);
    try {
        integrate_finite([](double) { return Complex{INFINITY}; }, 0.0, 1.0, cfg);
        FAIL("expected NonFiniteEvaluation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFiniteEvaluation);
    }
    QuadratureConfig small_budget;
    small_budget.max_subdivisions = 50;
    const auto pole = [](double x) { return Complex{1.0 / std::pow(x - 1.0 / 3.0, 2)}; };
    CHECK_FALSE(integrate_finite(pole, 0.0, 1.0, small_budget).converged);
}

TEST_CASE("property: polynomials integrate exactly on random intervals") {
    testgen::Gen gen(11);
    const QuadratureConfig cfg;
    for (int i = 0; i < 50; ++i) {
        const double a = gen.uniform(-5.0, 5.0);
        const double b = a + gen.uniform(0.1, 10.0);
        const double c = gen.uniform(-3.0, 3.0);
        const auto f = [c](double x) { return Complex{c * x * x * x + x * x - 2.0}; };
        const auto anti = [c](double x) { return c * x * x * x * x / 4.0 + x * x * x / 3.0 - 2.0 * x; };
        const auto r = integrate_finite(f, a, b, cfg);
        CHECK(std::abs(r.value.real() - (anti(b) - anti(a))) <= 1e-9 * std::max(1.0, std::abs(anti(b) - anti(a))));
    }
}

TEST_CASE("extrapolation recovers c0 from c0 + c1 x^beta") {
    testgen::Gen gen(5);
    for (int i = 0; i < 20; ++i) {
        const double c0 = gen.uniform(-2.0, 2.0);
        const double c1 = gen.uniform(0.5, 3.0);
        const double beta = gen.uniform(0.4, 2.0);
        std::vector<double> x, y;
        for (int k = 0; k < 6; ++k) {
            x.push_back(std::pow(10.0, -1.0 - 0.5 * k));
            y.push_back(c0 + c1 * std::pow(x.back(), beta));
        }
        const LimitEstimate e = extrapolate_limit(x, y, 1e-15);
        CHECK(e.method == "fit");
        CHECK(e.monotone);
        CHECK(e.order == doctest::Approx(beta).epsilon(1e-6));
        CHECK(e.limit == doctest::Approx(c0).epsilon(1e-8));
    }
    const std::vector<double> x{1.0, 0.1, 0.01};
    const std::vector<double> diverging{1.0, 10.0, 100.0};
    CHECK_FALSE(extrapolate_limit(x, diverging, 0.0).converging);
    CHECK(extrapolate_limit(x, std::vector<double>{2.0, 2.0, 2.0}, 1e-12).method == "settled");
    CHECK_THROWS_AS(extrapolate_limit(diverging, x, 0.0), Error);
}
