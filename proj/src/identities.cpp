// SPDX-License-Identifier: MIT
#include "smallball/identities.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

/// tgamma overflows past this argument.
constexpr double kGammaOverflow = 170.0;

double simplex_level(const SimplexInstance& inst, int level, double remaining,
                     const QuadratureConfig& cfg, QuadratureResult& budget) {
    if (remaining <= 0.0) return 0.0;
    const double a = inst.a[static_cast<std::size_t>(level)];
    const bool innermost = level + 1 == inst.dimension();
    const Integrand f = [&](double u) -> Complex {
        const double weight = std::exp(-a * u);
        if (innermost) return weight;
        return weight * simplex_level(inst, level + 1, remaining - u, cfg, budget);
    };
    const QuadratureResult r = integrate_finite(f, 0.0, remaining, cfg);
    if (level == 0) {
        budget.error_estimate += r.error_estimate;
        budget.converged = budget.converged && r.converged;
    } else {
        budget.converged = budget.converged && r.converged;
    }
    budget.evaluations += r.evaluations;
    return r.value.real();
}

}  // namespace

void SimplexInstance::validate() const {
    if (a.empty()) raise(ErrorCode::DomainError, "simplex needs n >= 1 coefficients");
    if (dimension() > kMaxDimension) {
        raise(ErrorCode::DimensionTooLarge,
              "direct simplex integration is capped at n = " + std::to_string(kMaxDimension));
    }
    for (double aj : a) {
        if (!(aj >= 0.0) || !std::isfinite(aj)) {
            raise(ErrorCode::DomainError, "simplex coefficients must be finite and >= 0");
        }
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        raise(ErrorCode::DomainError, "horizon T must be a finite value > 0");
    }
}

double dirichlet_moment(std::span<const double> p, double horizon) {
    if (p.empty()) raise(ErrorCode::DomainError, "Dirichlet moment needs at least one exponent");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        raise(ErrorCode::DomainError, "horizon T must be a finite value > 0");
    }
    double total = 0.0;
    for (double pj : p) {
        if (!(pj > 0.0) || !std::isfinite(pj)) {
            raise(ErrorCode::DomainError, "Dirichlet exponents must be finite and > 0");
        }
        total += pj;
    }
    if (total + 1.0 < kGammaOverflow) {
        double value = std::pow(horizon, total) / std::tgamma(total + 1.0);
        for (double pj : p) value *= std::tgamma(pj);
        return value;
    }
    double log_value = total * std::log(horizon) - std::lgamma(total + 1.0);
    for (double pj : p) log_value += std::lgamma(pj);
    return std::exp(log_value);
}

QuadratureResult simplex_exp_direct(const SimplexInstance& inst, const QuadratureConfig& cfg) {
    inst.validate();
    cfg.validate();
    QuadratureConfig level_cfg = cfg;
    level_cfg.abs_tol = cfg.abs_tol / inst.dimension();
    QuadratureResult result;
    result.value = simplex_level(inst, 0, inst.horizon, level_cfg, result);
    return result;
}

QuadratureResult simplex_exp_contour(const SimplexInstance& inst, const ContourSpec& contour,
                                     const QuadratureConfig& cfg) {
    inst.validate();
    cfg.validate();
    const double horizon = inst.horizon;
    const ContourIntegrand integrand = [&inst, horizon](Complex z) {
        Complex denom = z;
        for (double aj : inst.a) denom *= z + horizon * aj;
        return std::exp(z) / denom;
    };
    QuadratureResult result = contour_integral(integrand, contour, cfg);
    result *= std::pow(horizon, inst.dimension()) /
              (2.0 * std::numbers::pi * Complex{0.0, 1.0});
    if (std::abs(result.value.imag()) > 10.0 * cfg.abs_tol) {
        raise(ErrorCode::ImaginaryResidue, "simplex contour value has a non-zero imaginary part");
    }
    return result;
}

}  // namespace smallball
