// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "smallball/contour.hpp"
#include "smallball/extrapolate.hpp"
#include "smallball/phi.hpp"

namespace smallball {

struct SmallBallResult {
    /// lim_{eps -> 0} eps^{-1} P(L(T) <= eps)
    double constant = 0.0;
    /// (2/T) int_0^inf ray_integrand(r) dr
    double ray_part = 0.0;
    /// 3 pi / (2 int dv/(|v|^a1 + |v|^a2)), zero when min alpha >= 1.
    double correction = 0.0;
    BranchKind branch = BranchKind::MinAtLeastOne;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Im{e^{i r/sqrt2} Phi(r e^{-i3pi/4})} / |Phi(r e^{i3pi/4})|^2 * e^{-r/sqrt2} / r,
/// with Phi(r e^{-i3pi/4}) taken as the conjugate of Phi(r e^{i3pi/4}).
double ray_integrand(double r, const StableParams& params, const QuadratureConfig& cfg);

/// The same expression for a given value of Phi(r e^{i3pi/4}).
double ray_integrand_from(Complex phi_up, double r);

/// r -> Phi(r e^{i3pi/4}) for any resolvent-type function.
using RayResolvent = std::function<Complex(double)>;

/// int_0^inf of the ray integrand built on `resolvent`.
///
/// (0, 1] is integrated in s = ln r, where every algebraic behaviour of the
/// integrand at the origin becomes an exponential tail; [1, inf) uses the
/// e^{-r/sqrt2} decay.
QuadratureResult ray_integral(const RayResolvent& resolvent, const QuadratureConfig& cfg);

/// 3 pi / (2 int_R dv/(|v|^a1 + |v|^a2)) for min alpha < 1, else 0.
double correction_term(const StableParams& params, const QuadratureConfig& cfg);

/// Ray part plus correction. Raises Error(DomainError) when max alpha <= 1.
SmallBallResult smallball_constant(const StableParams& params, const QuadratureConfig& cfg);

/// (1/(iT)) int_gamma e^z / (z Phi(z)) dz. Independent cross-check of smallball_constant.
QuadratureResult contour_constant(const StableParams& params, const ContourSpec& contour,
                                  const QuadratureConfig& cfg);

/// Single-process local time constant (alpha T^{1/alpha - 1}/pi) sin^2(pi/alpha) Gamma(1 - 1/alpha).
double local_time_constant(double alpha, double horizon);

/// The same constant via the ray integral on phi(z) = int dv/(z + T|v|^alpha):
/// (2/T) int_0^inf ray_integrand dr.
QuadratureResult local_time_ray_constant(double alpha, double horizon, const QuadratureConfig& cfg);

struct LaplacePoint {
    double lambda = 0.0;
    /// E e^{-lambda L(T)}
    double value = 0.0;
    /// lambda * value
    double scaled = 0.0;
    double imaginary_residue = 0.0;
    double error_estimate = 0.0;
    /// Radius beyond which the geometric series in Phi converges.
    double resummation_radius = 0.0;
    bool converged = true;
};

/// E e^{-lambda L(T)} = (1/2 pi i) int_gamma e^z / (z (1 + lambda T Phi(z)/(2 pi))) dz.
///
/// For lambda > 1 the integrand is multiplied by lambda so the quadrature
/// tolerance applies to the scaled value. Raises Error(ImaginaryResidue) when
/// |Im value| exceeds 10 abs_tol.
LaplacePoint laplace_transform(double lambda, const StableParams& params,
                               const ContourSpec& contour, const QuadratureConfig& cfg);

/// (4 lambda T/pi int dv/(1 + T|v|^b))^{b/(b-1)}, b = max alpha: beyond this
/// radius |lambda T Phi(z)/(2 pi)| <= 1/2 on the sector, so the geometric
/// series in Phi converges there.
double resummation_radius(double lambda, const StableParams& params, const QuadratureConfig& cfg);

struct LaplaceAsymptote {
    std::vector<LaplacePoint> points;
    LimitEstimate limit;
};

/// lambda * E e^{-lambda L(T)} on an ascending lambda grid, extrapolated to lambda -> inf.
LaplaceAsymptote laplace_asymptote(std::span<const double> lambdas, const StableParams& params,
                                   const ContourSpec& contour, const QuadratureConfig& cfg);

/// Negative moments E L(T)^{-p} are finite exactly for p < 1.
std::string negative_moment_statement();

}  // namespace smallball
