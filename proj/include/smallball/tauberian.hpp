// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smallball/extrapolate.hpp"

namespace smallball {

/// Law of a non-negative variable X with closed-form transform and CDF.
struct KnownLaw {
    std::string name;
    /// lambda -> E e^{-lambda X}
    std::function<double(double)> laplace;
    /// eps -> P(X <= eps)
    std::function<double(double)> cdf;
    double alpha_expected = 1.0;
    double a_expected = 1.0;
};

struct TauberianReport {
    std::string law;
    double alpha = 0.0;
    std::vector<double> lambdas;
    /// lambda^alpha E e^{-lambda X}
    std::vector<double> transform_sequence;
    std::vector<double> epsilons;
    /// eps^{-alpha} P(X <= eps)
    std::vector<double> cdf_sequence;
    LimitEstimate transform_limit;
    LimitEstimate cdf_limit;
    /// transform limit / Gamma(1 + alpha)
    double predicted_cdf_limit = 0.0;
    double relative_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Checks lim eps^{-alpha} P(X <= eps) = (lim lambda^alpha E e^{-lambda X}) / Gamma(1 + alpha).
/// lambda_grid must ascend to at least 1e4 and eps_grid descend to at most 1e-4;
/// Error(GridTooCoarse) when either sequence shows no sign of settling.
TauberianReport tauberian_check(const KnownLaw& law, std::span<const double> lambda_grid,
                                std::span<const double> eps_grid, double tolerance);

/// Exponential(1), Uniform(0, 1) and G^2 with G standard half-normal.
std::vector<KnownLaw> tauberian_corpus();

/// Default tolerance for a corpus law: 1% for alpha = 1, 2% otherwise.
double corpus_tolerance(const KnownLaw& law);

/// 10^1, 10^1.5, ..., 10^5
std::vector<double> default_lambda_grid();
/// 10^-1, 10^-1.5, ..., 10^-5
std::vector<double> default_eps_grid();

}  // namespace smallball
