// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "smallball/contour.hpp"
#include "smallball/phi.hpp"

namespace testgen {

/// Seeded source of random test inputs; every property test owns one.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// 10^u with u uniform in [lo_exp, hi_exp].
    double log_uniform(double lo_exp, double hi_exp) { return std::pow(10.0, uniform(lo_exp, hi_exp)); }

    /// Point of the closed sector |arg z| <= 3pi/4 with log-uniform modulus.
    smallball::Complex sector_point(double lo_exp = -3.0, double hi_exp = 3.0) {
        return std::polar(log_uniform(lo_exp, hi_exp),
                          uniform(-smallball::ContourSpec::kAngle, smallball::ContourSpec::kAngle));
    }

    /// Parameters with max alpha > 1.
    smallball::StableParams collision_params() {
        const double high = uniform(1.05, 2.0);
        const double low = uniform(0.1, 2.0);
        return integer(0, 1) ? smallball::StableParams{high, low, uniform(0.5, 2.0)}
                             : smallball::StableParams{low, high, uniform(0.5, 2.0)};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace testgen
