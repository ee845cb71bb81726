// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <vector>

#include "smallball/errors.hpp"
#include "smallball/extrapolate.hpp"
#include "smallball/tauberian.hpp"

using namespace smallball;

TEST_CASE("default grids") {
    const auto lambdas = default_lambda_grid();
    const auto eps = default_eps_grid();
    REQUIRE(lambdas.size() == 9);
    REQUIRE(eps.size() == 9);
    CHECK(lambdas.front() == doctest::Approx(10.0));
    CHECK(lambdas.back() == doctest::Approx(1e5));
    CHECK(eps.back() == doctest::Approx(1e-5));
}

TEST_CASE("corpus laws satisfy the ratio test") {
    const auto corpus = tauberian_corpus();
    REQUIRE(corpus.size() == 3);
    for (const KnownLaw& law : corpus) {
        CAPTURE(law.name);
        const TauberianReport r =
            tauberian_check(law, default_lambda_grid(), default_eps_grid(), corpus_tolerance(law));
        CHECK(r.passed);
        CHECK(r.relative_error <= r.tolerance);
        CHECK(r.cdf_limit.limit == doctest::Approx(law.a_expected / std::tgamma(1.0 + law.alpha_expected))
                                       .epsilon(corpus_tolerance(law)));
    }
    CHECK(corpus_tolerance(corpus[0]) == 0.01);
    CHECK(corpus_tolerance(corpus[2]) == 0.02);
}

TEST_CASE("a law whose scaled transform does not settle is GridTooCoarse") {
    KnownLaw wrong = tauberian_corpus()[0];
    wrong.alpha_expected = 0.5;
    try {
        tauberian_check(wrong, default_lambda_grid(), default_eps_grid(), 0.01);
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
}

TEST_CASE("grids that stop short are refused") {
    const KnownLaw law = tauberian_corpus()[0];
    const std::vector<double> short_lambdas{10.0, 100.0, 1000.0};
    CHECK_THROWS_AS(tauberian_check(law, short_lambdas, default_eps_grid(), 0.01), Error);
    const std::vector<double> short_eps{0.1, 0.01};
    CHECK_THROWS_AS(tauberian_check(law, default_lambda_grid(), short_eps, 0.01), Error);
}

TEST_CASE("extrapolation of c0 + c1 x^beta") {
    std::vector<double> x;
    std::vector<double> y;
    for (double v = 1e-1; v >= 1e-5; v /= 3.0) {
        x.push_back(v);
        y.push_back(2.0 + 3.0 * std::pow(v, 0.7));
    }
    const LimitEstimate e = extrapolate_limit(x, y, 1e-14);
    CHECK(e.converging);
    CHECK(e.monotone);
    CHECK(e.limit == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(e.last - 2.0) > std::abs(e.limit - 2.0));
}
