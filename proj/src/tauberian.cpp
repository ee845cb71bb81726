// SPDX-License-Identifier: MIT
#include "smallball/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

/// Differences below this fraction of the sequence scale count as settled.
constexpr double kNoise = 1e-13;

double sequence_noise(const std::vector<double>& values) {
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    return kNoise * std::max(scale, 1.0);
}

void check_limit(const LimitEstimate& est, const char* which) {
    const bool drifting = std::abs(est.limit - est.last) > 0.25 * std::abs(est.last);
    if (!est.converging || drifting) {
        raise(ErrorCode::GridTooCoarse,
              std::string(which) + " sequence does not settle on this grid");
    }
}

std::vector<double> log_grid(double first_exponent, double last_exponent) {
    std::vector<double> grid;
    const double step = first_exponent < last_exponent ? 0.5 : -0.5;
    for (double e = first_exponent; step > 0 ? e <= last_exponent + 1e-12 : e >= last_exponent - 1e-12;
         e += step) {
        grid.push_back(std::pow(10.0, e));
    }
    return grid;
}

}  // namespace

TauberianReport tauberian_check(const KnownLaw& law, std::span<const double> lambda_grid,
                                std::span<const double> eps_grid, double tolerance) {
    if (!(law.alpha_expected > 0.0)) raise(ErrorCode::DomainError, "law exponent must be > 0");
    if (lambda_grid.size() < 2 || eps_grid.size() < 2) {
        raise(ErrorCode::GridTooCoarse, "grids need at least two points");
    }
    for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > lambda_grid[i - 1])) {
            raise(ErrorCode::InvalidConfig, "lambda grid must ascend");
        }
    }
    for (std::size_t i = 1; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] < eps_grid[i - 1])) raise(ErrorCode::InvalidConfig, "eps grid must descend");
    }
    if (lambda_grid.front() <= 0.0 || eps_grid.back() <= 0.0) {
        raise(ErrorCode::InvalidConfig, "grid points must be > 0");
    }
    if (lambda_grid.back() < 1e4) raise(ErrorCode::GridTooCoarse, "lambda grid must reach 1e4");
    if (eps_grid.back() > 1e-4) raise(ErrorCode::GridTooCoarse, "eps grid must reach 1e-4");

    TauberianReport report;
    report.law = law.name;
    report.alpha = law.alpha_expected;
    report.tolerance = tolerance;
    const double alpha = law.alpha_expected;

    std::vector<double> inverse_lambdas;
    for (double lambda : lambda_grid) {
        report.lambdas.push_back(lambda);
        inverse_lambdas.push_back(1.0 / lambda);
        report.transform_sequence.push_back(std::pow(lambda, alpha) * law.laplace(lambda));
    }
    for (double eps : eps_grid) {
        report.epsilons.push_back(eps);
        report.cdf_sequence.push_back(std::pow(eps, -alpha) * law.cdf(eps));
    }

    report.transform_limit = extrapolate_limit(inverse_lambdas, report.transform_sequence,
                                               sequence_noise(report.transform_sequence));
    report.cdf_limit =
        extrapolate_limit(report.epsilons, report.cdf_sequence, sequence_noise(report.cdf_sequence));
    check_limit(report.transform_limit, "transform");
    check_limit(report.cdf_limit, "cdf");

    report.predicted_cdf_limit = report.transform_limit.limit / std::tgamma(1.0 + alpha);
    report.relative_error = std::abs(report.cdf_limit.limit - report.predicted_cdf_limit) /
                            std::abs(report.predicted_cdf_limit);
    report.passed = report.relative_error <= tolerance;
    return report;
}

std::vector<KnownLaw> tauberian_corpus() {
    std::vector<KnownLaw> corpus;
    corpus.push_back({"exponential",
                      [](double lambda) { return 1.0 / (1.0 + lambda); },
                      [](double eps) { return -std::expm1(-eps); }, 1.0, 1.0});
    corpus.push_back({"uniform",
                      [](double lambda) { return -std::expm1(-lambda) / lambda; },
                      [](double eps) { return std::min(eps, 1.0); }, 1.0, 1.0});
    corpus.push_back({"half_normal_squared",
                      [](double lambda) { return 1.0 / std::sqrt(1.0 + 2.0 * lambda); },
                      [](double eps) { return std::erf(std::sqrt(0.5 * eps)); }, 0.5,
                      std::numbers::sqrt2 / 2.0});
    return corpus;
}

double corpus_tolerance(const KnownLaw& law) {
    return law.alpha_expected == 1.0 ? 0.01 : 0.02;
}

std::vector<double> default_lambda_grid() { return log_grid(1.0, 5.0); }
std::vector<double> default_eps_grid() { return log_grid(-1.0, -5.0); }

}  // namespace smallball
