// SPDX-License-Identifier: MIT
#include "smallball/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
};

LinearFit least_squares(std::span<const double> u, std::span<const double> w) {
    const double n = static_cast<double>(u.size());
    double su = 0.0, sw = 0.0, suu = 0.0, suw = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        su += u[i];
        sw += w[i];
        suu += u[i] * u[i];
        suw += u[i] * w[i];
    }
    const double det = n * suu - su * su;
    if (det == 0.0) return {sw / n, 0.0};
    const double slope = (n * suw - su * sw) / det;
    return {(sw - slope * su) / n, slope};
}

}  // namespace

LimitEstimate extrapolate_limit(std::span<const double> x, std::span<const double> y,
                                double noise) {
    if (x.size() != y.size() || x.size() < 2) {
        raise(ErrorCode::InvalidConfig, "extrapolation needs at least two (x, y) samples");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || (i > 0 && !(x[i] < x[i - 1]))) {
            raise(ErrorCode::InvalidConfig, "extrapolation grid must be positive and decreasing");
        }
    }

    LimitEstimate est;
    est.last = y.back();
    est.limit = est.last;

    int sign = 0;
    est.monotone = true;
    for (std::size_t i = 1; i < y.size(); ++i) {
        const double d = y[i] - y[i - 1];
        if (std::abs(d) <= noise) continue;
        const int s = d > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign) est.monotone = false;
        sign = s;
    }

    const std::size_t n = x.size();
    const std::size_t used = std::min(n, std::max<std::size_t>(3, (n + 1) / 2));
    const auto xs = x.subspan(n - used);
    const auto ys = y.subspan(n - used);

    std::vector<double> log_x, log_d;
    double max_diff = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        const double d = std::abs(ys[i] - ys[i - 1]);
        max_diff = std::max(max_diff, d);
        if (d > 0.0) {
            log_x.push_back(std::log(xs[i - 1]));
            log_d.push_back(std::log(d));
        }
    }
    if (max_diff <= noise) {
        est.method = "settled";
        est.converging = true;
        return est;
    }

    double beta = 1.0;
    if (log_x.size() >= 2) beta = least_squares(log_x, log_d).slope;
    if (!std::isfinite(beta) || beta <= 0.0) {
        est.method = "last";
        est.order = beta;
        est.converging = false;
        return est;
    }
    est.order = beta;
    est.converging = true;

    std::vector<double> powers(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) powers[i] = std::pow(xs[i], beta);
    const LinearFit fit = least_squares(powers, ys);
    double residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        residual = std::max(residual, std::abs(ys[i] - (fit.intercept + fit.slope * powers[i])));
    }
    est.residual = residual;
    if (residual > 0.1 * max_diff) {
        est.method = "last";
        return est;
    }
    est.limit = fit.intercept;
    est.method = "fit";
    return est;
}

}  // namespace smallball
