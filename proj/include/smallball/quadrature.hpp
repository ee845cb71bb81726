// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace smallball {

using Complex = std::complex<double>;

/// Integrand over a real variable. Real integrands return a zero imaginary part.
using Integrand = std::function<Complex(double)>;

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    /// Exponential tails are truncated once they fall below tail_cutoff * abs_tol.
    double tail_cutoff = 0.1;

    /// Throws Error(InvalidConfig) when an invariant is violated.
    void validate() const;

    /// Tolerance actually demanded of a result with magnitude `value`.
    double target(double value_magnitude) const;

    /// Copy with both tolerances multiplied by `factor`.
    QuadratureConfig tightened(double factor) const;
};

struct QuadratureResult {
    Complex value{};
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;

    QuadratureResult& operator+=(const QuadratureResult& other);
    QuadratureResult& operator*=(Complex factor);
};

QuadratureResult operator+(QuadratureResult lhs, const QuadratureResult& rhs);
QuadratureResult operator*(Complex factor, QuadratureResult rhs);

/// Adaptive 21-point Gauss-Kronrod integration of f over [a, b].
///
/// `singularity_exponent` declares an integrable algebraic singularity
/// f ~ (x - a)^sigma at the left endpoint, sigma in (-1, 0]. The integral is
/// then computed in the variable u with x = a + u^{1/(1+sigma)}, which makes
/// the transformed integrand bounded at u = 0.
///
/// Any non-finite evaluation raises Error(NonFiniteEvaluation). Exhausting
/// max_subdivisions returns the best estimate with converged == false.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg,
                                  double singularity_exponent = 0.0);

/// 2 * int_0^inf f for an even integrand f decaying at least like |v|^{-p}, p > 1.
/// [0, 1] is integrated directly; [1, inf) through v = e^t, which turns the
/// algebraic tail into an exponential one (see integrate_exponential_tail).
QuadratureResult integrate_real_line_even(const Integrand& f, const QuadratureConfig& cfg);

/// int_a^inf f for |f(r)| <= M max(r^growth, 1) e^{-decay_rate r}.
///
/// The domain is truncated at the r_max where max(r^growth,1) e^{-decay_rate r}
/// drops below tail_cutoff * abs_tol; the sampled size of the discarded tail
/// is added to the error estimate and counted against convergence.
QuadratureResult integrate_semi_infinite_decaying(const Integrand& f, double a,
                                                  double decay_rate,
                                                  const QuadratureConfig& cfg,
                                                  double growth_exponent = 0.0);

enum class TailDirection { Up, Down };

/// int_{t0}^{+inf} g (Up) or int_{-inf}^{t0} g (Down) for g that decays
/// exponentially at an unknown, possibly slow, rate.
///
/// Pieces of doubling length are integrated outward. After each piece the
/// local complex decay rate kappa is estimated twice from samples near the
/// piece end; the remainder is closed analytically as g(t_end)/kappa, and the
/// disagreement of the two rate estimates bounds the remainder's error.
/// If no stable decay is found before max_subdivisions pieces or before |t|
/// reaches `t_limit`, the best estimate is returned with converged = false.
QuadratureResult integrate_exponential_tail(
    const Integrand& g, double t0, TailDirection direction, const QuadratureConfig& cfg,
    double t_limit = std::numeric_limits<double>::infinity());

}  // namespace smallball
