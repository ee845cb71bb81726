// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smallball/phi.hpp"
#include "smallball/quadrature.hpp"
#include "smallball/rng.hpp"

namespace smallball {

struct MonteCarloConfig {
    static constexpr double kMaxWork = 1e9;

    long n_paths = 100000;
    int n_steps = 1000;
    /// Heat-kernel bandwidth; defaults to (T/n_steps)^{2/max alpha}.
    std::optional<double> epsilon;
    std::uint64_t seed = 42;
    /// Ascending small-ball thresholds.
    std::vector<double> thresholds{0.02, 0.05, 0.1};
    /// Also simulate on the doubled grid with the matching bandwidth and
    /// report the shift of the mean.
    bool halving = false;

    /// Raises Error(InvalidConfig) on any violated invariant.
    void validate() const;

    double bandwidth(const StableParams& params) const;
};

struct EstimateCI {
    double mean = 0.0;
    /// sample standard deviation / sqrt(n)
    double std_error = 0.0;
    long n = 0;
};

struct PathPair {
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> y;
};

/// Increment over dt of a symmetric alpha-stable process with characteristic
/// function e^{-dt |u|^alpha}. One generator block per draw.
double sample_stable_increment(double alpha, double dt, CounterStream& stream);

/// Paths of X (alpha1, tag 0) and X~ (alpha2, tag 1) on the uniform grid,
/// a pure function of (seed, path_index).
PathPair simulate_pair(const StableParams& params, const MonteCarloConfig& mc, long path_index);

/// (2 pi eps)^{-1/2} e^{-d^2/(2 eps)}
double heat_kernel(double d, double epsilon);

/// int_0^T p_eps(x_t - y_t) dt by the trapezoid rule on the path grid.
double collision_lt_estimate(const PathPair& pair, double epsilon, double horizon);

/// lim_{eps -> 0} E L_eps(T)^m for m in {1, 2}. DimensionTooLarge for m > 2.
QuadratureResult moment_formula(int m, const StableParams& params, const QuadratureConfig& cfg);

struct SmallBallRow {
    double threshold = 0.0;
    /// Fraction of paths with L_eps(T) <= threshold, binomial standard error.
    EstimateCI p_hat;
    /// p_hat.mean / threshold
    double ratio = 0.0;
};

struct HalvingShift {
    double fine_epsilon = 0.0;
    int fine_steps = 0;
    EstimateCI fine_mean;
    /// |mean on the doubled grid - mean on the base grid|, same paths.
    double shift = 0.0;
};

struct ExperimentResult {
    double epsilon = 0.0;
    EstimateCI first_moment;
    EstimateCI second_moment;
    std::vector<SmallBallRow> rows;
    std::optional<HalvingShift> halving;
};

/// Simulates every path, in fixed chunks whose partial sums merge in chunk
/// order, so the result does not depend on `threads`.
ExperimentResult run_experiment(const StableParams& params, const MonteCarloConfig& mc,
                                int threads = 1);

std::vector<SmallBallRow> estimate_smallball(const StableParams& params,
                                             const MonteCarloConfig& mc, int threads = 1);

}  // namespace smallball
