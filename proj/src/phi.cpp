// SPDX-License-Identifier: MIT
#include "smallball/phi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "smallball/contour.hpp"
#include "smallball/errors.hpp"

namespace smallball {

namespace {

constexpr double kExpCeiling = 700.0;
constexpr double kTailLimit = 1e4;
constexpr double kSectorSlack = 1e-12;

std::vector<double> breakpoints(Complex z, std::span<const PowerTerm> terms) {
    std::vector<double> points{0.0};
    const double modulus = std::abs(z);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& ti = terms[i];
        if (modulus > 0.0 && ti.exponent > 0.0) {
            points.push_back(std::log(modulus / ti.coefficient) / ti.exponent);
        }
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const auto& tj = terms[j];
            if (ti.exponent != tj.exponent) {
                points.push_back(std::log(tj.coefficient / ti.coefficient) /
                                 (ti.exponent - tj.exponent));
            }
        }
    }
    for (double& p : points) p = std::clamp(p, -kExpCeiling, kExpCeiling);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                 points.end());
    return points;
}

void check_sector(Complex z) {
    if (z == 0.0) raise(ErrorCode::DomainError, "Phi is not defined at z = 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        raise(ErrorCode::DomainError, "Phi needs a finite argument");
    }
    if (std::abs(principal_arg(z)) > ContourSpec::kAngle * (1.0 + kSectorSlack)) {
        raise(ErrorCode::DomainError, "Phi is only evaluated on the sector |arg z| <= 3pi/4");
    }
    const double modulus = std::abs(z);
    if (modulus < kPhiMinModulus || modulus > kPhiMaxModulus) {
        raise(ErrorCode::DomainError, "|z| is outside the supported range [1e-150, 1e150]");
    }
}

std::array<PowerTerm, 2> params_terms(const StableParams& params) {
    return {PowerTerm{params.alpha1, params.horizon}, PowerTerm{params.alpha2, params.horizon}};
}

}  // namespace

double StableParams::max_alpha() const { return std::max(alpha1, alpha2); }
double StableParams::min_alpha() const { return std::min(alpha1, alpha2); }

void StableParams::validate() const {
    for (double alpha : {alpha1, alpha2}) {
        if (!(alpha > 0.0 && alpha <= 2.0)) {
            raise(ErrorCode::DomainError, "stability index must lie in (0, 2]");
        }
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        raise(ErrorCode::DomainError, "horizon T must be a finite value > 0");
    }
}

void StableParams::validate_collision() const {
    validate();
    if (!(max_alpha() > 1.0)) {
        raise(ErrorCode::DomainError, "max{alpha1,alpha2} must exceed 1");
    }
}

const char* to_string(BranchKind kind) noexcept {
    return kind == BranchKind::MinBelowOne ? "min_below_one" : "min_at_least_one";
}

BranchKind branch_of(const StableParams& params) {
    return params.min_alpha() < 1.0 ? BranchKind::MinBelowOne : BranchKind::MinAtLeastOne;
}

QuadratureResult resolvent_integral(Complex z, std::span<const PowerTerm> terms,
                                    const QuadratureConfig& cfg) {
    const bool has_z = z != 0.0;
    const Integrand h = [z, has_z, terms](double t) -> Complex {
        double top = has_z ? -t : -kExpCeiling * 2.0;
        for (const auto& term : terms) top = std::max(top, (term.exponent - 1.0) * t);
        if (top > kExpCeiling) return 0.0;
        Complex denom = has_z ? z * std::exp(-t) : Complex{};
        for (const auto& term : terms) {
            denom += term.coefficient * std::exp((term.exponent - 1.0) * t);
        }
        return 1.0 / denom;
    };

    const std::vector<double> points = breakpoints(z, terms);
    const double lo = points.front() - 1.0;
    const double hi = points.back() + 1.0;

    // The t-space integrand is a bump of unit width per balance point, so its
    // peak sets the scale of the integral; a tiny peak shrinks abs_tol with it.
    double peak = 0.0;
    for (double p : points) peak = std::max(peak, std::abs(h(p)));
    QuadratureConfig piece_cfg = cfg;
    piece_cfg.abs_tol = cfg.abs_tol * std::min(1.0, peak) /
                        (2.0 * static_cast<double>(points.size() + 3));

    QuadratureResult total = integrate_exponential_tail(h, lo, TailDirection::Down, piece_cfg,
                                                        kTailLimit);
    double left = lo;
    for (double p : points) {
        total += integrate_finite(h, left, p, piece_cfg);
        left = p;
    }
    total += integrate_finite(h, left, hi, piece_cfg);
    total += integrate_exponential_tail(h, hi, TailDirection::Up, piece_cfg, kTailLimit);
    total *= 2.0;
    QuadratureConfig scaled_cfg = cfg;
    scaled_cfg.abs_tol = cfg.abs_tol * std::min(1.0, peak);
    total.converged =
        total.converged && total.error_estimate <= scaled_cfg.target(std::abs(total.value));
    return total;
}

QuadratureResult phi_eval(Complex z, const StableParams& params, const QuadratureConfig& cfg) {
    params.validate_collision();
    cfg.validate();
    check_sector(z);
    const auto terms = params_terms(params);
    return resolvent_integral(z, terms, cfg);
}

Complex phi_single_closed_form(Complex z, double alpha, double horizon) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        raise(ErrorCode::DomainError, "closed form needs alpha in (1, 2]");
    }
    if (!(horizon > 0.0)) raise(ErrorCode::DomainError, "horizon T must be > 0");
    if (z == 0.0) raise(ErrorCode::DomainError, "closed form is undefined at z = 0");
    if (std::abs(principal_arg(z)) >= std::numbers::pi) {
        raise(ErrorCode::DomainError, "closed form needs z off the negative real axis");
    }
    const double pi = std::numbers::pi;
    const double scale = 2.0 * pi / (alpha * std::sin(pi / alpha)) * std::pow(horizon, -1.0 / alpha);
    return scale * principal_power(z, 1.0 - 1.0 / alpha);
}

PhiLimit phi_limit_at_zero(const StableParams& params, const QuadratureConfig& cfg) {
    params.validate_collision();
    cfg.validate();
    PhiLimit limit{branch_of(params), std::nullopt, 0.0};
    if (limit.branch == BranchKind::MinAtLeastOne) return limit;
    const auto terms = params_terms(params);
    const QuadratureResult i0 = resolvent_integral(0.0, terms, cfg);
    limit.value = i0.value.real();
    limit.error_estimate = i0.error_estimate;
    return limit;
}

double phi_limit_closed_form(const StableParams& params) {
    params.validate_collision();
    const double a = params.min_alpha();
    const double b = params.max_alpha();
    if (!(a < 1.0)) raise(ErrorCode::DomainError, "I0 is finite only for min alpha < 1");
    const double pi = std::numbers::pi;
    return 2.0 / params.horizon * pi / ((b - a) * std::sin(pi * (1.0 - a) / (b - a)));
}

PhiBoundsReport phi_bounds_check(Complex z, const StableParams& params,
                                 const QuadratureConfig& cfg) {
    const QuadratureResult phi = phi_eval(z, params, cfg);
    const double b = params.max_alpha();
    const double modulus_z = std::abs(z);

    PhiBoundsReport report;
    report.phi = phi.value;
    report.modulus = std::abs(phi.value);
    report.error_estimate = phi.error_estimate;
    const double slack = phi.error_estimate;

    const std::array<PowerTerm, 1> single{PowerTerm{b, params.horizon}};
    const double i_upper = resolvent_integral(1.0, single, cfg).value.real();
    const double power = std::pow(modulus_z, 1.0 / b - 1.0);
    report.upper_bound = 4.0 * i_upper * power;
    report.upper_holds = report.modulus <= report.upper_bound + slack;

    const double i1 = phi_eval(1.0, params, cfg).value.real();
    report.lower_bound_min_form = 0.25 * i1 * std::min(power, 1.0);
    report.lower_min_form_holds = report.modulus >= report.lower_bound_min_form - slack;
    report.lower_bound_max_form = 0.25 * i1 * std::max(power, 1.0);
    report.lower_max_form_holds = report.modulus >= report.lower_bound_max_form - slack;

    report.cos_arg = report.modulus > 0.0 ? phi.value.real() / report.modulus : 1.0;
    report.cos_arg_holds =
        report.cos_arg >= -std::numbers::sqrt2 / 2.0 - slack / std::max(report.modulus, 1e-300);

    report.modulus_lower_bound = 0.25 * phi_eval(Complex{modulus_z, 0.0}, params, cfg).value.real();
    report.modulus_lower_holds = report.modulus >= report.modulus_lower_bound - slack;
    return report;
}

}  // namespace smallball
