// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <span>

#include "smallball/quadrature.hpp"

namespace smallball {

/// Stability indices of the two processes and the time horizon T.
struct StableParams {
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    double horizon = 1.0;

    double max_alpha() const;
    double min_alpha() const;

    /// 0 < alpha_i <= 2 and T > 0; raises Error(DomainError) otherwise.
    void validate() const;
    /// validate() plus max{alpha1, alpha2} > 1, needed for the collision local time.
    void validate_collision() const;
};

enum class BranchKind { MinBelowOne, MinAtLeastOne };

const char* to_string(BranchKind kind) noexcept;

/// MinBelowOne iff min{alpha1, alpha2} < 1; min = 1 belongs to MinAtLeastOne.
BranchKind branch_of(const StableParams& params);

/// c |v|^exponent.
struct PowerTerm {
    double exponent;
    double coefficient;
};

/// int_R dv / (z + sum_i c_i |v|^{a_i}).
///
/// Evaluated as 2 int_{-inf}^{inf} dt / (z e^{-t} + sum_i c_i e^{(a_i - 1) t})
/// after v = e^t, split at the scales where the denominator terms balance, so
/// the integrand shoulders sit on breakpoints whatever the size of |z|. z = 0
/// is allowed when the smallest exponent is below 1. No domain checks: the
/// callers own them.
QuadratureResult resolvent_integral(Complex z, std::span<const PowerTerm> terms,
                                    const QuadratureConfig& cfg);

/// |z| outside [kPhiMinModulus, kPhiMaxModulus] is refused.
inline constexpr double kPhiMinModulus = 1e-150;
inline constexpr double kPhiMaxModulus = 1e150;

/// Phi(z) = int_R dv / (z + T|v|^alpha1 + T|v|^alpha2) on the sector
/// |arg z| <= 3pi/4, z != 0. Requires max alpha > 1.
QuadratureResult phi_eval(Complex z, const StableParams& params, const QuadratureConfig& cfg);

/// Single-process phi(z) = int_R dv / (z + T|v|^alpha) in closed form,
/// (2 pi / (alpha sin(pi/alpha))) T^{-1/alpha} z^{1/alpha - 1}, alpha in (1, 2].
/// Follows from v = (z/T)^{1/alpha} u and int_0^inf du/(1+u^alpha) = (pi/alpha)/sin(pi/alpha).
Complex phi_single_closed_form(Complex z, double alpha, double horizon);

struct PhiLimit {
    BranchKind branch;
    /// Finite limit I0 = int_R dv/(T|v|^alpha1 + T|v|^alpha2), present only for MinBelowOne.
    std::optional<double> value;
    double error_estimate = 0.0;
};

/// lim_{z -> 0} Phi(z) along the sector: +inf when min alpha >= 1, I0 otherwise.
PhiLimit phi_limit_at_zero(const StableParams& params, const QuadratureConfig& cfg);

/// Closed form of I0 for min alpha < 1 < max alpha (test oracle and cross-check):
/// (2/T) pi / ((b - a) sin(pi (1 - a)/(b - a))) with a = min alpha, b = max alpha.
double phi_limit_closed_form(const StableParams& params);

/// Bounds on Phi over the sector. Each flag compares against the quadrature
/// error of |Phi|, so a bound is only reported violated when the violation
/// exceeds the numerical uncertainty.
struct PhiBoundsReport {
    Complex phi;
    double modulus = 0.0;
    double error_estimate = 0.0;

    /// |Phi(z)| <= 4 int dv/(1 + T|v|^{max a}) |z|^{1/max a - 1}
    double upper_bound = 0.0;
    bool upper_holds = false;

    /// |Phi(z)| >= (1/4) I1 min{|z|^{1/max a - 1}, 1}, I1 = int dv/(1+T|v|^a1+T|v|^a2).
    double lower_bound_min_form = 0.0;
    bool lower_min_form_holds = false;

    /// Same bound written with max{...} instead of min{...}: reported, not required.
    double lower_bound_max_form = 0.0;
    bool lower_max_form_holds = false;

    /// cos arg Phi(z) >= -sqrt(2)/2
    double cos_arg = 0.0;
    bool cos_arg_holds = false;

    /// |Phi(z)| >= (1/4) int dv/(|z| + T|v|^a1 + T|v|^a2)
    double modulus_lower_bound = 0.0;
    bool modulus_lower_holds = false;

    bool required_hold() const {
        return upper_holds && lower_min_form_holds && cos_arg_holds && modulus_lower_holds;
    }
};

PhiBoundsReport phi_bounds_check(Complex z, const StableParams& params,
                                 const QuadratureConfig& cfg);

}  // namespace smallball
