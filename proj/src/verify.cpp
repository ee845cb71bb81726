// SPDX-License-Identifier: MIT
#include "smallball/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "smallball/contour.hpp"
#include "smallball/errors.hpp"
#include "smallball/identities.hpp"
#include "smallball/phi.hpp"
#include "smallball/smallball.hpp"
#include "smallball/stable_mc.hpp"
#include "smallball/tauberian.hpp"

namespace smallball {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
public:
    Recorder(std::string suite, double perturb, std::vector<CheckResult>& out)
        : suite_(std::move(suite)), perturb_(perturb), out_(out) {}

    /// Value injected with the configured fault.
    double value(double computed) const { return computed * (1.0 + perturb_); }

    /// |value(computed) - expected| <= tolerance
    void close(const std::string& name, double computed, double expected, double tolerance) {
        record(name, std::abs(value(computed) - expected), tolerance);
    }

    /// Relative version of close().
    void close_rel(const std::string& name, double computed, double expected, double tolerance) {
        record(name, std::abs(value(computed) - expected) / std::abs(expected), tolerance);
    }

    /// A residual that must not exceed the tolerance.
    void record(const std::string& name, double residual, double tolerance) {
        out_.push_back({suite_, name, residual, tolerance,
                        std::isfinite(residual) && residual <= tolerance});
    }

private:
    std::string suite_;
    double perturb_;
    std::vector<CheckResult>& out_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string params_label(const StableParams& p) {
    return "(" + fmt(p.alpha1) + "," + fmt(p.alpha2) + ",T=" + fmt(p.horizon) + ")";
}

void gamma_suite(Recorder& rec, const QuadratureConfig& cfg) {
    for (double s : {-2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
        const double computed = reciprocal_gamma(s, ContourSpec{}, cfg).value.real();
        const double expected = std::floor(s) == s && s <= 0.0 ? 0.0 : 1.0 / std::tgamma(s);
        rec.close("reciprocal_gamma s=" + fmt(s), computed, expected, 1e-8);
    }
    double drift = 0.0;
    for (double s : {-2.5, 0.5, 4.0}) {
        const double base = reciprocal_gamma(s, ContourSpec{1.0}, cfg).value.real();
        for (double radius : {0.25, 4.0}) {
            const double other = reciprocal_gamma(s, ContourSpec{radius}, cfg).value.real();
            drift = std::max(drift, std::abs(rec.value(other) - base));
        }
    }
    rec.record("reciprocal_gamma radius invariance", drift, 1e-8);
}

void phi_suite(Recorder& rec, const QuadratureConfig& cfg) {
    const StableParams brownian{2.0, 2.0, 1.0};
    rec.close_rel("Phi(1) at (2,2,1) = pi/sqrt2", phi_eval(1.0, brownian, cfg).value.real(),
                  kPi / std::numbers::sqrt2, 1e-9);

    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> log_mod(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(-ContourSpec::kAngle, ContourSpec::kAngle);
    std::uniform_real_distribution<double> alpha_dist(1.05, 2.0);
    std::uniform_real_distribution<double> horizon_dist(0.5, 2.0);
    double worst_single = 0.0;
    double worst_conj = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Complex z = std::polar(std::pow(10.0, log_mod(gen)), angle(gen));
        const double alpha = alpha_dist(gen);
        const double horizon = horizon_dist(gen);
        const StableParams p{alpha, alpha, horizon};
        const Complex computed = phi_eval(z, p, cfg).value;
        const Complex expected = phi_single_closed_form(z, alpha, 2.0 * horizon);
        worst_single = std::max(
            worst_single, std::abs(rec.value(1.0) * computed - expected) / std::abs(expected));
        const Complex mirrored = phi_eval(std::conj(z), p, cfg).value;
        worst_conj = std::max(worst_conj, std::abs(mirrored - std::conj(computed)) /
                                              std::abs(computed));
    }
    rec.record("Phi equal-index reduction to closed form (10 random points)", worst_single, 1e-7);
    rec.record("Phi conjugate symmetry (10 random points)", worst_conj, 1e-9);

    const StableParams split{0.5, 1.5, 1.0};
    rec.close_rel("Phi limit at zero for (0.5,1.5,1) = 2pi", *phi_limit_at_zero(split, cfg).value,
                  2.0 * kPi, 1e-9);

    std::uniform_real_distribution<double> index(1e-3, 2.0);
    double worst_sector = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex z = std::polar(std::pow(10.0, log_mod(gen)), angle(gen));
        const double v = std::pow(10.0, log_mod(gen));
        const double big_a = std::pow(v, index(gen)) + std::pow(v, index(gen));
        const double ratio = (std::abs(z) + big_a) / (4.0 * std::abs(z + big_a));
        worst_sector = std::max(worst_sector, ratio - 1.0);
    }
    rec.record("sector bound |z+A| >= (|z|+A)/4 (1000 random points)",
               std::max(0.0, worst_sector), 0.0);

    const std::vector<StableParams> grid_params{
        {0.5, 1.5, 1.0}, {1.5, 1.5, 1.0}, {2.0, 2.0, 1.0}, {1.2, 1.9, 1.0}};
    const std::vector<double> args{-ContourSpec::kAngle, -kPi / 2.0, 0.0, kPi / 2.0,
                                   ContourSpec::kAngle};
    for (const StableParams& p : grid_params) {
        double violation = 0.0;
        for (int e = -3; e <= 3; ++e) {
            for (double t : args) {
                const PhiBoundsReport r = phi_bounds_check(std::polar(std::pow(10.0, e), t), p, cfg);
                const double m = rec.value(r.modulus);
                violation = std::max({violation, (m - r.upper_bound) / r.upper_bound,
                                      (r.lower_bound_min_form - m) / r.lower_bound_min_form,
                                      (r.modulus_lower_bound - m) / r.modulus_lower_bound,
                                      -std::numbers::sqrt2 / 2.0 - r.cos_arg});
            }
        }
        rec.record("Phi bounds on 35-point grid " + params_label(p), std::max(0.0, violation),
                   1e-9);
    }
}

void identities_suite(Recorder& rec, const QuadratureConfig& cfg) {
    const std::vector<double> ones{1.0, 1.0};
    rec.close("dirichlet p=(1,1) = 1/2", dirichlet_moment(ones, 1.0), 0.5, 1e-15);
    const std::vector<double> halves{0.5, 1.5};
    rec.close("dirichlet p=(0.5,1.5) = pi/4", dirichlet_moment(halves, 1.0), kPi / 4.0, 1e-14);
    const std::vector<double> mixed{0.7, 1.3, 2.2};
    const double exponent =
        std::log(rec.value(dirichlet_moment(mixed, 2.0)) / dirichlet_moment(mixed, 1.0)) /
        std::log(2.0);
    rec.record("dirichlet T-scaling exponent = sum p", std::abs(exponent - 4.2), 1e-10);

    const SimplexInstance pair{{1.0, 2.0}, 1.0};
    rec.close("simplex n=2 a=(1,2) direct vs antiderivative",
              simplex_exp_direct(pair, cfg).value.real(),
              0.5 - std::exp(-1.0) + 0.5 * std::exp(-2.0), 1e-9);

    for (int n = 1; n <= 4; ++n) {
        const SimplexInstance zero{std::vector<double>(static_cast<std::size_t>(n), 0.0), 2.0};
        rec.close_rel("simplex contour a=0 n=" + std::to_string(n) + " = T^n/n!",
                      simplex_exp_contour(zero, ContourSpec{}, cfg).value.real(),
                      std::pow(2.0, n) / std::tgamma(n + 1.0), 1e-9);
    }

    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> coeff(0.0, 5.0);
    const double horizons[] = {0.5, 1.0, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        SimplexInstance inst;
        inst.horizon = horizons[i % 3];
        for (int j = 0; j <= i % 4; ++j) inst.a.push_back(coeff(gen));
        const double direct = simplex_exp_direct(inst, cfg).value.real();
        const double contour = simplex_exp_contour(inst, ContourSpec{}, cfg).value.real();
        worst = std::max(worst, std::abs(rec.value(contour) - direct) / std::max(1.0, std::abs(direct)));
    }
    rec.record("simplex contour vs direct (20 random instances)", worst, 1e-6);
}

void smallball_suite(Recorder& rec, const QuadratureConfig& cfg) {
    for (double alpha : {1.2, 1.5, 1.8, 2.0}) {
        double worst = 0.0;
        for (double horizon : {1.0, 2.0}) {
            const double ray = local_time_ray_constant(alpha, horizon, cfg).value.real();
            const double closed = local_time_constant(alpha, horizon);
            worst = std::max(worst, std::abs(rec.value(ray) - closed) / closed);
        }
        rec.record("single-process ray constant vs closed form alpha=" + fmt(alpha), worst, 1e-4);
    }
    rec.close_rel("local time constant alpha=2 T=1 = 2/sqrt(pi)", local_time_constant(2.0, 1.0),
                  2.0 / std::sqrt(kPi), 1e-14);
    rec.close_rel("C(2,2,1) = 2 sqrt(2/pi)", smallball_constant({2.0, 2.0, 1.0}, cfg).constant,
                  2.0 * std::sqrt(2.0 / kPi), 1e-8);
    for (const StableParams& p : {StableParams{0.5, 1.5, 1.0}, StableParams{1.5, 1.8, 1.0},
                                  StableParams{1.2, 1.9, 2.0}}) {
        const double ray = smallball_constant(p, cfg).constant;
        const double contour = contour_constant(p, ContourSpec{}, cfg).value.real();
        rec.close_rel("ray constant vs contour constant " + params_label(p), ray, contour, 1e-8);
    }
    rec.close_rel("correction (0.5,1.5) = 3/4", correction_term({0.5, 1.5, 1.0}, cfg), 0.75, 1e-9);
}

void laplace_suite(Recorder& rec, const QuadratureConfig& cfg) {
    const StableParams brownian{2.0, 2.0, 1.0};
    const double a = 0.5;
    const double exact = std::exp(0.5 * a * a) * std::erfc(a / std::numbers::sqrt2);
    const LaplacePoint at_one = laplace_transform(1.0, brownian, ContourSpec{}, cfg);
    rec.close("E exp(-L) at (2,2,1) vs exact Brownian transform", at_one.value, exact, 1e-9);

    const double m1 = moment_formula(1, brownian, cfg).value.real();
    const double m2 = moment_formula(2, brownian, cfg).value.real();
    const double m3 = 2.0 * std::sqrt(2.0 / kPi) / 8.0;
    const double remainder = std::abs(rec.value(at_one.value) - (1.0 - m1 + 0.5 * m2));
    rec.record("E exp(-L) at lambda=1 within moment-series bound",
               std::max(0.0, remainder - m3 / 6.0), 0.0);

    double drift = 0.0;
    for (double radius : {0.5, 2.0}) {
        drift = std::max(drift, std::abs(rec.value(laplace_transform(1.0, brownian,
                                                                     ContourSpec{radius}, cfg)
                                                       .value) -
                                         at_one.value));
    }
    rec.record("Laplace transform radius invariance", drift, 1e-8);

    double worst_step = -1.0;
    double previous = 1.0;
    for (double lambda : {1e-6, 0.1, 1.0, 10.0, 100.0, 1e3}) {
        const double value = laplace_transform(lambda, brownian, ContourSpec{}, cfg).value;
        worst_step = std::max(worst_step, value - previous);
        previous = value;
    }
    rec.record("Laplace transform decreasing in lambda", std::max(0.0, worst_step), 0.0);

    const std::vector<double> lambdas{1e3, 3e3, 1e4, 3e4, 1e5};
    for (const StableParams& p : {brownian, StableParams{1.5, 1.8, 1.0}}) {
        const LaplaceAsymptote asym = laplace_asymptote(lambdas, p, ContourSpec{}, cfg);
        rec.close_rel("lambda E exp(-lambda L) limit vs constant " + params_label(p),
                      asym.limit.limit, smallball_constant(p, cfg).constant, 1e-3);
    }
}

void moments_suite(Recorder& rec, const QuadratureConfig& cfg) {
    const StableParams brownian{2.0, 2.0, 1.0};
    const double m1 = moment_formula(1, brownian, cfg).value.real();
    rec.close("first moment (2,2,1) = 1/sqrt(2 pi)", m1, 1.0 / std::sqrt(2.0 * kPi), 1e-8);
    const double m1_t4 = moment_formula(1, {2.0, 2.0, 4.0}, cfg).value.real();
    rec.close_rel("first moment scales like sqrt(T)", m1_t4, 2.0 * m1, 1e-9);
    rec.close("second moment (2,2,1) = 1/4", moment_formula(2, brownian, cfg).value.real(), 0.25,
              1e-8);
}

void tauberian_suite(Recorder& rec, const QuadratureConfig& cfg) {
    const auto lambdas = default_lambda_grid();
    const auto epsilons = default_eps_grid();
    for (KnownLaw law : tauberian_corpus()) {
        const double tol = corpus_tolerance(law);
        const auto laplace = law.laplace;
        law.laplace = [&rec, laplace](double lambda) { return rec.value(laplace(lambda)); };
        const TauberianReport r = tauberian_check(law, lambdas, epsilons, tol);
        rec.record("Tauberian ratio " + law.name, r.relative_error, tol);
    }

    // Collision local time of two Brownian motions: numerical transform, exact CDF.
    const StableParams brownian{2.0, 2.0, 1.0};
    KnownLaw collision{
        "brownian_collision",
        [&](double lambda) {
            return rec.value(laplace_transform(lambda, brownian, ContourSpec{}, cfg).value);
        },
        [](double eps) { return std::erf(std::numbers::sqrt2 * eps); }, 1.0,
        2.0 * std::sqrt(2.0 / kPi)};
    const TauberianReport r = tauberian_check(collision, lambdas, epsilons, 1e-3);
    rec.record("Tauberian ratio brownian collision local time", r.relative_error, 1e-3);
}

using Suite = std::function<void(Recorder&, const QuadratureConfig&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> all{
        {"gamma", gamma_suite},         {"phi", phi_suite},
        {"identities", identities_suite}, {"smallball", smallball_suite},
        {"laplace", laplace_suite},     {"moments", moments_suite},
        {"tauberian", tauberian_suite}};
    return all;
}

}  // namespace

std::vector<std::string> verify_suites() {
    std::vector<std::string> names;
    for (const auto& [name, suite] : suites()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    options.cfg.validate();
    if (options.suite) {
        const auto names = verify_suites();
        if (std::find(names.begin(), names.end(), *options.suite) == names.end()) {
            raise(ErrorCode::InvalidConfig, "unknown verification suite '" + *options.suite + "'");
        }
    }
    std::vector<CheckResult> results;
    for (const auto& [name, suite] : suites()) {
        if (options.suite && *options.suite != name) continue;
        Recorder rec(name, options.perturb, results);
        suite(rec, options.cfg);
    }
    return results;
}

}  // namespace smallball
