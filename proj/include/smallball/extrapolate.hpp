// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <string>

namespace smallball {

/// Limit of y(x) as x -> 0+ from samples on a grid with x decreasing.
struct LimitEstimate {
    double limit = 0.0;
    double last = 0.0;
    /// Fitted exponent beta of y ~ c0 + c1 x^beta; 0 when no fit was made.
    double order = 0.0;
    /// Largest deviation of the fitted curve from the samples it used.
    double residual = 0.0;
    /// All consecutive differences share a sign or sit below `noise`.
    bool monotone = false;
    /// Differences shrink along the grid (beta > 0), or are already at noise level.
    bool converging = false;
    /// "fit", "settled" (differences below noise) or "last" (fit rejected).
    std::string method;
};

/// Fits y = c0 + c1 x^beta over the last half of the grid (at least three
/// points), with beta from the log-log slope of successive differences, and
/// returns c0. Falls back to the last sample when the differences are already
/// at `noise` level or the fit residual exceeds a tenth of the largest
/// difference. Requires at least two points and strictly decreasing x > 0.
LimitEstimate extrapolate_limit(std::span<const double> x, std::span<const double> y,
                                double noise);

}  // namespace smallball
