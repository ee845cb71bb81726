// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <numbers>

#include "smallball/quadrature.hpp"

namespace smallball {

/// Hankel-type contour: the ray arg z = -3pi/4 traversed inward from infinity
/// to |z| = R, the arc |z| = R from arg -3pi/4 to 3pi/4, then the ray
/// arg z = 3pi/4 outward to infinity.
struct ContourSpec {
    static constexpr double kAngle = 0.75 * std::numbers::pi;

    double radius = 1.0;

    void validate() const;
};

/// z^{-s} = exp(-s (ln|z| + i arg z)) with arg z in (-pi, pi].
/// Points on the negative real axis take arg = pi whatever the sign of the
/// imaginary zero. Raises Error(ZeroBase) for z = 0.
Complex principal_power(Complex z, Complex s);

/// arg z normalised into (-pi, pi].
double principal_arg(Complex z);

using ContourIntegrand = std::function<Complex(Complex)>;

/// int over the contour of F(z) dz.
///
/// F must already contain the e^z factor: on both rays Re z = -r/sqrt(2), so
/// the ray integrands decay like e^{-r/sqrt(2)} times the polynomial growth
/// max(r^growth_exponent, 1) of the remaining factors. The arc uses
/// z = R e^{it}, dz = i R e^{it} dt. Raises Error(RayDivergence) when a ray
/// integral misses its tolerance, i.e. when the decay assumption is false.
QuadratureResult contour_integral(const ContourIntegrand& integrand, const ContourSpec& contour,
                                  const QuadratureConfig& cfg, double growth_exponent = 0.0);

/// 1/Gamma(s) = (1/2 pi i) int e^z z^{-s} dz, valid for every complex s.
QuadratureResult reciprocal_gamma(Complex s, const ContourSpec& contour,
                                  const QuadratureConfig& cfg);

}  // namespace smallball
