// SPDX-License-Identifier: MIT
#include "smallball/smallball.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr Complex kI{0.0, 1.0};
/// s = ln r stays above ln kPhiMinModulus.
constexpr double kLogRadiusLimit = 345.0;

Complex ray_point(double r) { return std::polar(r, ContourSpec::kAngle); }

/// Inner Phi evaluations are ten times tighter than the outer integral.
QuadratureConfig inner_config(const QuadratureConfig& cfg) { return cfg.tightened(0.1); }

QuadratureResult correction_integral(const StableParams& params, const QuadratureConfig& cfg) {
    const std::array<PowerTerm, 2> terms{PowerTerm{params.alpha1, 1.0},
                                         PowerTerm{params.alpha2, 1.0}};
    return resolvent_integral(0.0, terms, cfg);
}

void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        raise(ErrorCode::DomainError, "lambda must be a finite value > 0");
    }
}

}  // namespace

double ray_integrand_from(Complex phi_up, double r) {
    const Complex phase = std::polar(1.0, r * kInvSqrt2);
    const double numerator = (phase * std::conj(phi_up)).imag();
    return numerator / std::norm(phi_up) * std::exp(-r * kInvSqrt2) / r;
}

double ray_integrand(double r, const StableParams& params, const QuadratureConfig& cfg) {
    if (!(r > 0.0)) raise(ErrorCode::DomainError, "ray integrand needs r > 0");
    return ray_integrand_from(phi_eval(ray_point(r), params, cfg).value, r);
}

QuadratureResult ray_integral(const RayResolvent& resolvent, const QuadratureConfig& cfg) {
    cfg.validate();
    const Integrand f = [&resolvent](double r) {
        return Complex{ray_integrand_from(resolvent(r), r), 0.0};
    };
    const Integrand log_f = [&f](double s) {
        const double r = std::exp(s);
        return f(r) * r;
    };
    const QuadratureConfig half = cfg.tightened(0.5);
    QuadratureResult total =
        integrate_exponential_tail(log_f, 0.0, TailDirection::Down, half, kLogRadiusLimit);
    total += integrate_semi_infinite_decaying(f, 1.0, kInvSqrt2, half, 1.0);
    total.converged = total.converged && total.error_estimate <= cfg.target(std::abs(total.value));
    return total;
}

double correction_term(const StableParams& params, const QuadratureConfig& cfg) {
    params.validate_collision();
    cfg.validate();
    if (branch_of(params) == BranchKind::MinAtLeastOne) return 0.0;
    return 1.5 * kPi / correction_integral(params, cfg).value.real();
}

SmallBallResult smallball_constant(const StableParams& params, const QuadratureConfig& cfg) {
    params.validate_collision();
    cfg.validate();
    const QuadratureConfig inner = inner_config(cfg);
    const RayResolvent phi_up = [&params, &inner](double r) {
        return phi_eval(ray_point(r), params, inner).value;
    };
    const QuadratureResult ray = ray_integral(phi_up, cfg);

    SmallBallResult result;
    result.branch = branch_of(params);
    result.ray_part = 2.0 / params.horizon * ray.value.real();
    result.error_estimate = 2.0 / params.horizon * ray.error_estimate;
    result.converged = ray.converged;
    if (result.branch == BranchKind::MinBelowOne) {
        const QuadratureResult i0 = correction_integral(params, cfg);
        const double i0_value = i0.value.real();
        result.correction = 1.5 * kPi / i0_value;
        result.error_estimate += result.correction * i0.error_estimate / i0_value;
        result.converged = result.converged && i0.converged;
    }
    result.constant = result.ray_part + result.correction;
    return result;
}

QuadratureResult contour_constant(const StableParams& params, const ContourSpec& contour,
                                  const QuadratureConfig& cfg) {
    params.validate_collision();
    cfg.validate();
    const QuadratureConfig inner = inner_config(cfg);
    const ContourIntegrand integrand = [&params, &inner](Complex z) {
        return std::exp(z) / (z * phi_eval(z, params, inner).value);
    };
    QuadratureResult result = contour_integral(integrand, contour, cfg, 1.0);
    result *= 1.0 / (kI * params.horizon);
    return result;
}

double local_time_constant(double alpha, double horizon) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        raise(ErrorCode::DomainError, "local time constant needs alpha in (1, 2]");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        raise(ErrorCode::DomainError, "horizon T must be a finite value > 0");
    }
    const double s = std::sin(kPi / alpha);
    return alpha * std::pow(horizon, 1.0 / alpha - 1.0) / kPi * s * s * std::tgamma(1.0 - 1.0 / alpha);
}

QuadratureResult local_time_ray_constant(double alpha, double horizon,
                                         const QuadratureConfig& cfg) {
    local_time_constant(alpha, horizon);
    cfg.validate();
    const QuadratureConfig inner = inner_config(cfg);
    const std::array<PowerTerm, 1> terms{PowerTerm{alpha, horizon}};
    const RayResolvent phi_up = [&terms, &inner](double r) {
        return resolvent_integral(ray_point(r), terms, inner).value;
    };
    QuadratureResult result = ray_integral(phi_up, cfg);
    result *= 2.0 / horizon;
    return result;
}

double resummation_radius(double lambda, const StableParams& params, const QuadratureConfig& cfg) {
    require_lambda(lambda);
    params.validate_collision();
    const double b = params.max_alpha();
    const std::array<PowerTerm, 1> terms{PowerTerm{b, params.horizon}};
    const double integral = resolvent_integral(1.0, terms, cfg).value.real();
    return std::pow(4.0 * lambda * params.horizon / kPi * integral, b / (b - 1.0));
}

LaplacePoint laplace_transform(double lambda, const StableParams& params,
                               const ContourSpec& contour, const QuadratureConfig& cfg) {
    require_lambda(lambda);
    params.validate_collision();
    cfg.validate();
    LaplacePoint point;
    point.lambda = lambda;
    point.resummation_radius = resummation_radius(lambda, params, cfg);
    if (!(point.resummation_radius > 0.0)) {
        raise(ErrorCode::DomainError, "resummation radius must be positive");
    }

    const QuadratureConfig inner = inner_config(cfg);
    const double coupling = lambda * params.horizon / (2.0 * kPi);
    const double weight = lambda > 1.0 ? lambda : 1.0;
    const ContourIntegrand integrand = [&params, &inner, coupling, weight](Complex z) {
        const Complex phi = phi_eval(z, params, inner).value;
        return weight * std::exp(z) / (z * (1.0 + coupling * phi));
    };
    QuadratureResult integral = contour_integral(integrand, contour, cfg);
    integral *= 1.0 / (2.0 * kPi * kI);

    const Complex value = integral.value / weight;
    point.value = value.real();
    point.scaled = lambda * point.value;
    point.imaginary_residue = std::abs(value.imag());
    point.error_estimate = integral.error_estimate / weight;
    point.converged = integral.converged;
    if (point.imaginary_residue > 10.0 * cfg.abs_tol) {
        raise(ErrorCode::ImaginaryResidue,
              "Laplace transform has imaginary part " + std::to_string(point.imaginary_residue));
    }
    return point;
}

LaplaceAsymptote laplace_asymptote(std::span<const double> lambdas, const StableParams& params,
                                   const ContourSpec& contour, const QuadratureConfig& cfg) {
    LaplaceAsymptote report;
    std::vector<double> x, y;
    double noise = cfg.abs_tol;
    for (double lambda : lambdas) {
        report.points.push_back(laplace_transform(lambda, params, contour, cfg));
        const LaplacePoint& p = report.points.back();
        x.push_back(1.0 / lambda);
        y.push_back(p.scaled);
        noise = std::max(noise, 10.0 * p.lambda * p.error_estimate);
    }
    report.limit = extrapolate_limit(x, y, noise);
    return report;
}

std::string negative_moment_statement() {
    return "E[L(T)^{-p}] is finite if and only if p < 1";
}

}  // namespace smallball
