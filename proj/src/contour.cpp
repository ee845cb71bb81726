// SPDX-License-Identifier: MIT
#include "smallball/contour.hpp"

#include <cmath>

#include "smallball/errors.hpp"

namespace smallball {

namespace {
constexpr double kRayDecay = std::numbers::sqrt2 / 2.0;
constexpr Complex kI{0.0, 1.0};
}  // namespace

void ContourSpec::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        raise(ErrorCode::InvalidConfig, "contour radius must be a finite value > 0");
    }
}

double principal_arg(Complex z) {
    const double arg = std::arg(z);
    return arg == -std::numbers::pi ? std::numbers::pi : arg;
}

Complex principal_power(Complex z, Complex s) {
    if (z == 0.0) raise(ErrorCode::ZeroBase, "principal_power is undefined at z = 0");
    const Complex log_z{std::log(std::abs(z)), principal_arg(z)};
    return std::exp(-s * log_z);
}

QuadratureResult contour_integral(const ContourIntegrand& integrand, const ContourSpec& contour,
                                  const QuadratureConfig& cfg, double growth_exponent) {
    contour.validate();
    cfg.validate();
    const double radius = contour.radius;
    const double angle = ContourSpec::kAngle;
    const Complex down = std::polar(1.0, -angle);
    const Complex up = std::polar(1.0, angle);

    QuadratureConfig piece_cfg = cfg;
    piece_cfg.abs_tol = cfg.abs_tol / 3.0;

    const auto ray = [&](Complex direction) {
        const Integrand along = [&integrand, direction](double r) {
            return integrand(r * direction);
        };
        QuadratureResult piece = integrate_semi_infinite_decaying(along, radius, kRayDecay,
                                                                  piece_cfg, growth_exponent);
        if (!piece.converged) {
            raise(ErrorCode::RayDivergence,
                  "ray integral missed its tolerance; the integrand does not decay like "
                  "e^{-r/sqrt(2)} r^growth");
        }
        return piece;
    };

    // Incoming ray runs from infinity down to R.
    QuadratureResult total = (-down) * ray(down);

    const Integrand arc = [&integrand, radius](double t) {
        const Complex z = std::polar(radius, t);
        return integrand(z) * (kI * z);
    };
    total += integrate_finite(arc, -angle, angle, piece_cfg);
    total += up * ray(up);
    total.converged = total.converged && total.error_estimate <= cfg.target(std::abs(total.value));
    return total;
}

QuadratureResult reciprocal_gamma(Complex s, const ContourSpec& contour,
                                  const QuadratureConfig& cfg) {
    const ContourIntegrand kernel = [s](Complex z) { return std::exp(z) * principal_power(z, s); };
    const double growth = std::max(0.0, -s.real());
    QuadratureResult result = contour_integral(kernel, contour, cfg, growth);
    result *= 1.0 / (2.0 * std::numbers::pi * kI);
    return result;
}

}  // namespace smallball
