// SPDX-License-Identifier: MIT
#include "smallball/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

// 21-point Kronrod nodes/weights with the embedded 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980099277, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Weights of the 10-point Gauss rule at kNodes[1], kNodes[3], ..., kNodes[9].
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a;
    double b;
    Complex value;
    double error;
};

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex checked_eval(const Integrand& f, double x) {
    const Complex y = f(x);
    if (!is_finite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "integrand returned " << y << " at x = " << x;
        raise(ErrorCode::NonFiniteEvaluation, msg.str());
    }
    return y;
}

Segment gauss_kronrod(const Integrand& f, double a, double b, long& evaluations) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Complex, 10> lower{};
    std::array<Complex, 10> upper{};
    const Complex fc = checked_eval(f, centre);
    Complex kronrod = fc * kKronrodWeights[10];
    Complex gauss{};
    double resabs = std::abs(fc) * kKronrodWeights[10];
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kNodes[j];
        lower[j] = checked_eval(f, centre - dx);
        upper[j] = checked_eval(f, centre + dx);
        const Complex pair = lower[j] + upper[j];
        kronrod += kKronrodWeights[j] * pair;
        resabs += kKronrodWeights[j] * (std::abs(lower[j]) + std::abs(upper[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    evaluations += 21;

    const Complex mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += kKronrodWeights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));
    }

    const double scale = std::abs(half);
    resabs *= scale;
    resasc *= scale;
    double error = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && error != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(50.0 * kEps * resabs, error);
    }
    return Segment{a, b, kronrod * half, error};
}

QuadratureResult adaptive_gauss_kronrod(const Integrand& f, double a, double b,
                                        const QuadratureConfig& cfg) {
    QuadratureResult result;
    if (a == b) return result;

    const auto by_error = [](const Segment& x, const Segment& y) { return x.error < y.error; };
    std::vector<Segment> heap;
    std::vector<Segment> frozen;
    heap.reserve(64);

    heap.push_back(gauss_kronrod(f, a, b, result.evaluations));
    Complex total = heap.front().value;
    double error = heap.front().error;

    while (error > cfg.target(std::abs(total)) &&
           static_cast<int>(heap.size() + frozen.size()) < cfg.max_subdivisions && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        const double width = std::abs(worst.b - worst.a);
        const double magnitude = std::max(std::abs(worst.a), std::abs(worst.b));
        if (!(std::min(worst.a, worst.b) < mid && mid < std::max(worst.a, worst.b)) ||
            width <= 100.0 * kEps * magnitude) {
            frozen.push_back(worst);
            continue;
        }

        const Segment left = gauss_kronrod(f, worst.a, mid, result.evaluations);
        const Segment right = gauss_kronrod(f, mid, worst.b, result.evaluations);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }

    // Re-sum to shed the drift of the incremental updates.
    total = 0.0;
    error = 0.0;
    for (const auto* list : {&heap, &frozen}) {
        for (const auto& s : *list) {
            total += s.value;
            error += s.error;
        }
    }
    result.value = total;
    result.error_estimate = error;
    result.converged = error <= cfg.target(std::abs(total));
    return result;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0)) raise(ErrorCode::InvalidConfig, "abs_tol must be > 0");
    if (!(rel_tol > 0.0)) raise(ErrorCode::InvalidConfig, "rel_tol must be > 0");
    if (max_subdivisions < 1) raise(ErrorCode::InvalidConfig, "max_subdivisions must be >= 1");
    if (!(tail_cutoff > 0.0 && tail_cutoff < 1.0)) {
        raise(ErrorCode::InvalidConfig, "tail_cutoff must lie in (0, 1)");
    }
}

double QuadratureConfig::target(double value_magnitude) const {
    return std::max(abs_tol, rel_tol * value_magnitude);
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
    QuadratureConfig out = *this;
    out.abs_tol *= factor;
    out.rel_tol *= factor;
    return out;
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    evaluations += other.evaluations;
    converged = converged && other.converged;
    return *this;
}

QuadratureResult& QuadratureResult::operator*=(Complex factor) {
    value *= factor;
    error_estimate *= std::abs(factor);
    return *this;
}

QuadratureResult operator+(QuadratureResult lhs, const QuadratureResult& rhs) {
    lhs += rhs;
    return lhs;
}

QuadratureResult operator*(Complex factor, QuadratureResult rhs) {
    rhs *= factor;
    return rhs;
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg, double singularity_exponent) {
    cfg.validate();
    if (!(a < b)) {
        std::ostringstream msg;
        msg << "integrate_finite requires a < b (got a = " << a << ", b = " << b << ")";
        raise(ErrorCode::DomainError, msg.str());
    }
    if (!(singularity_exponent > -1.0 && singularity_exponent <= 0.0)) {
        raise(ErrorCode::DomainError, "singularity exponent must lie in (-1, 0]");
    }
    if (singularity_exponent == 0.0) return adaptive_gauss_kronrod(f, a, b, cfg);

    // x = a + u^q with q = 1/(1+sigma): f(x) dx = f(a + u^q) q u^{q-1} du.
    const double q = 1.0 / (1.0 + singularity_exponent);
    const double u_max = std::pow(b - a, 1.0 / q);
    const Integrand graded = [&f, a, q](double u) {
        return f(a + std::pow(u, q)) * (q * std::pow(u, q - 1.0));
    };
    return adaptive_gauss_kronrod(graded, 0.0, u_max, cfg);
}

QuadratureResult integrate_exponential_tail(const Integrand& g, double t0,
                                            TailDirection direction,
                                            const QuadratureConfig& cfg, double t_limit) {
    cfg.validate();
    const double sign = direction == TailDirection::Up ? 1.0 : -1.0;
    QuadratureConfig piece_cfg = cfg;
    piece_cfg.abs_tol = 0.125 * cfg.abs_tol;

    QuadratureResult total;
    Complex last_remainder{};
    double last_remainder_error = std::numeric_limits<double>::infinity();

    double t = t0;
    double length = 1.0;
    const int max_pieces = std::min(cfg.max_subdivisions, 256);
    for (int piece_index = 0; piece_index < max_pieces; ++piece_index) {
        double t_end = t + sign * length;
        bool at_limit = false;
        if (std::abs(t_end) >= t_limit) {
            t_end = sign * t_limit;
            at_limit = true;
            if (sign * (t_end - t) <= 0.0) break;
        }
        total += integrate_finite(g, std::min(t, t_end), std::max(t, t_end), piece_cfg);

        // Two local decay-rate estimates from samples trailing the piece end.
        const double h = 0.25 * std::abs(t_end - t);
        const Complex g2 = checked_eval(g, t_end);
        const Complex g1 = checked_eval(g, t_end - sign * h);
        const Complex g0 = checked_eval(g, t_end - 2.0 * sign * h);
        total.evaluations += 3;

        const double tol = 0.25 * cfg.target(std::abs(total.value));
        Complex remainder{};
        double remainder_error = std::numeric_limits<double>::infinity();
        if (g2 == 0.0) {
            remainder_error = std::abs(g1) * h;
        } else if (g1 != 0.0 && g0 != 0.0) {
            const Complex rate_near = std::log(g1 / g2) / h;
            const Complex rate_far = std::log(g0 / g1) / h;
            if (rate_near.real() > 0.0) {
                remainder = g2 / rate_near;
                remainder_error = std::abs(remainder) * std::abs(rate_far - rate_near) /
                                      std::abs(rate_near) +
                                  8.0 * kEps * std::abs(remainder);
            }
        }
        if (std::isfinite(remainder_error)) {
            last_remainder = remainder;
            last_remainder_error = remainder_error;
        }
        if (piece_index >= 1 && remainder_error <= tol) {
            total.value += remainder;
            total.error_estimate += remainder_error;
            total.converged = total.converged &&
                              total.error_estimate <= cfg.target(std::abs(total.value));
            return total;
        }
        if (at_limit) break;
        t = t_end;
        length *= 2.0;
    }

    // Budget or domain exhausted: best estimate, flagged.
    if (std::isfinite(last_remainder_error)) {
        total.value += last_remainder;
        total.error_estimate += last_remainder_error;
    } else {
        total.error_estimate = std::numeric_limits<double>::infinity();
    }
    total.converged = false;
    return total;
}

QuadratureResult integrate_real_line_even(const Integrand& f, const QuadratureConfig& cfg) {
    cfg.validate();
    const QuadratureConfig half_cfg = cfg.tightened(0.5);
    QuadratureResult head = integrate_finite(f, 0.0, 1.0, half_cfg);
    const Integrand log_tail = [&f](double t) {
        const double v = std::exp(t);
        return f(v) * v;
    };
    const QuadratureResult tail =
        integrate_exponential_tail(log_tail, 0.0, TailDirection::Up, half_cfg, 700.0);
    if (!tail.converged) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "transformed tail did not meet tolerance (error estimate " << tail.error_estimate
            << ")";
        raise(ErrorCode::TailDivergence, msg.str());
    }
    head += tail;
    head *= 2.0;
    head.converged = head.converged && head.error_estimate <= cfg.target(std::abs(head.value));
    return head;
}

QuadratureResult integrate_semi_infinite_decaying(const Integrand& f, double a,
                                                  double decay_rate,
                                                  const QuadratureConfig& cfg,
                                                  double growth_exponent) {
    cfg.validate();
    if (!(decay_rate > 0.0)) raise(ErrorCode::DomainError, "decay_rate must be > 0");
    if (!(a >= 0.0)) raise(ErrorCode::DomainError, "lower limit must be >= 0");
    if (!(growth_exponent >= 0.0)) raise(ErrorCode::DomainError, "growth exponent must be >= 0");

    // Solve max(r^beta, 1) e^{-d r} = tail_cutoff * abs_tol by fixed-point iteration.
    const double log_target = std::log(1.0 / (cfg.tail_cutoff * cfg.abs_tol));
    double r_max = log_target / decay_rate;
    for (int i = 0; i < 16; ++i) {
        r_max = (log_target + growth_exponent * std::log(std::max(r_max, 1.0))) / decay_rate;
    }
    r_max = std::max(r_max, a + 4.0 / decay_rate);

    QuadratureResult result = integrate_finite(f, a, r_max, cfg);

    // Envelope of |f| at r_max from samples spread over 4/d, each rescaled back to r_max.
    double envelope = 0.0;
    for (int j = 0; j <= 8; ++j) {
        const double r = r_max + 0.5 * j / decay_rate;
        const double rescale = std::exp(0.5 * j) * std::pow(r_max / r, growth_exponent);
        envelope = std::max(envelope, std::abs(checked_eval(f, r)) * rescale);
    }
    result.evaluations += 9;
    const double effective_rate = decay_rate - growth_exponent / r_max;
    const double tail_bound = effective_rate > 0.0
                                  ? 2.0 * envelope / effective_rate
                                  : std::numeric_limits<double>::infinity();
    result.error_estimate += tail_bound;
    result.converged =
        result.converged && result.error_estimate <= cfg.target(std::abs(result.value));
    return result;
}

}  // namespace smallball
