// SPDX-License-Identifier: MIT
#include "smallball/stable_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kChunkPaths = 1024;
constexpr std::uint32_t kTagX = 0;
constexpr std::uint32_t kTagY = 1;

class StableSampler {
public:
    StableSampler(double alpha, double dt) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha <= 2.0)) {
            raise(ErrorCode::DomainError, "stability index must lie in (0, 2]");
        }
        if (!(dt > 0.0) || !std::isfinite(dt)) {
            raise(ErrorCode::DomainError, "time step must be a finite value > 0");
        }
        if (alpha == 2.0) {
            scale_ = std::sqrt(2.0 * dt);
        } else if (alpha == 1.0) {
            scale_ = dt;
        } else {
            scale_ = std::pow(dt, 1.0 / alpha);
            inv_alpha_ = 1.0 / alpha;
            tail_power_ = (1.0 - alpha) / alpha;
        }
    }

    double operator()(CounterStream& stream) const {
        const auto [u1, u2] = stream.uniform_pair();
        if (alpha_ == 2.0) {
            return scale_ * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        }
        const double u = kPi * (u1 - 0.5);
        if (alpha_ == 1.0) return scale_ * std::tan(u);
        const double w = -std::log(u2);
        const double s = std::sin(alpha_ * u) / std::pow(std::cos(u), inv_alpha_) *
                         std::pow(std::cos((1.0 - alpha_) * u) / w, tail_power_);
        return scale_ * s;
    }

private:
    double alpha_;
    double scale_ = 1.0;
    double inv_alpha_ = 1.0;
    double tail_power_ = 0.0;
};

class HeatKernel {
public:
    explicit HeatKernel(double epsilon)
        : norm_(1.0 / std::sqrt(2.0 * kPi * epsilon)), rate_(0.5 / epsilon) {}
    double operator()(double d) const { return norm_ * std::exp(-rate_ * d * d); }

private:
    double norm_;
    double rate_;
};

/// phi1(x) = (1 - e^{-x})/x
double phi1(double x) { return x == 0.0 ? 1.0 : -std::expm1(-x) / x; }

double phi1_derivative(double x) {
    if (x < 0.5) {
        // sum_{k>=1} k (-x)^{k-1} / (k+1)!
        double term = 0.5;
        double sum = -0.5;
        for (int k = 2; k < 30; ++k) {
            term *= -x / static_cast<double>(k + 1);
            sum -= static_cast<double>(k) * term;
        }
        return sum;
    }
    return (x * std::exp(-x) + std::expm1(-x)) / (x * x);
}

/// int_{s1 + s2 < 1} e^{-x s1 - y s2} ds = (phi1(x) - phi1(y)) / (y - x)
double simplex2(double x, double y) {
    const double h = y - x;
    if (std::abs(h) > 1e-5 * std::max({1.0, std::abs(x), std::abs(y)})) {
        return (phi1(x) - phi1(y)) / h;
    }
    return -phi1_derivative(0.5 * (x + y));
}

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_l2_sq = 0.0;
    double fine_sum = 0.0;
    double fine_sum_sq = 0.0;
    std::vector<long> below;
};

EstimateCI summarize(double sum, double sum_sq, long n) {
    EstimateCI ci;
    ci.n = n;
    ci.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * ci.mean) / static_cast<double>(n - 1));
        ci.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return ci;
}

}  // namespace

void MonteCarloConfig::validate() const {
    if (n_paths < 1) raise(ErrorCode::InvalidConfig, "n_paths must be >= 1");
    if (n_steps < 2) raise(ErrorCode::InvalidConfig, "n_steps must be >= 2");
    if (static_cast<double>(n_paths) * static_cast<double>(n_steps) > kMaxWork) {
        raise(ErrorCode::InvalidConfig, "n_paths * n_steps must not exceed 1e9");
    }
    if (epsilon && (!(*epsilon > 0.0) || !std::isfinite(*epsilon))) {
        raise(ErrorCode::InvalidConfig, "epsilon must be a finite value > 0");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0) || std::isnan(thresholds[i])) {
            raise(ErrorCode::InvalidConfig, "thresholds must be > 0");
        }
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            raise(ErrorCode::InvalidConfig, "thresholds must be strictly ascending");
        }
    }
}

double MonteCarloConfig::bandwidth(const StableParams& params) const {
    if (epsilon) return *epsilon;
    return std::pow(params.horizon / n_steps, 2.0 / params.max_alpha());
}

double sample_stable_increment(double alpha, double dt, CounterStream& stream) {
    return StableSampler(alpha, dt)(stream);
}

PathPair simulate_pair(const StableParams& params, const MonteCarloConfig& mc, long path_index) {
    params.validate();
    mc.validate();
    if (path_index < 0 || path_index >= mc.n_paths) {
        raise(ErrorCode::InvalidConfig, "path_index must lie in [0, n_paths)");
    }
    const double dt = params.horizon / mc.n_steps;
    const StableSampler sx(params.alpha1, dt);
    const StableSampler sy(params.alpha2, dt);
    const auto path = static_cast<std::uint64_t>(path_index);
    CounterStream stream_x(mc.seed, path, kTagX);
    CounterStream stream_y(mc.seed, path, kTagY);

    const auto size = static_cast<std::size_t>(mc.n_steps) + 1;
    PathPair pair{std::vector<double>(size), std::vector<double>(size, 0.0),
                  std::vector<double>(size, 0.0)};
    for (std::size_t k = 0; k < size; ++k) {
        pair.times[k] = params.horizon * static_cast<double>(k) / mc.n_steps;
    }
    for (std::size_t k = 1; k < size; ++k) {
        pair.x[k] = pair.x[k - 1] + sx(stream_x);
        pair.y[k] = pair.y[k - 1] + sy(stream_y);
    }
    return pair;
}

double heat_kernel(double d, double epsilon) { return HeatKernel(epsilon)(d); }

double collision_lt_estimate(const PathPair& pair, double epsilon, double horizon) {
    if (!(epsilon > 0.0)) raise(ErrorCode::DomainError, "epsilon must be > 0");
    if (pair.x.size() < 2 || pair.x.size() != pair.y.size()) {
        raise(ErrorCode::DomainError, "path pair needs two equal grids of at least 2 points");
    }
    const HeatKernel p(epsilon);
    const std::size_t last = pair.x.size() - 1;
    double sum = 0.5 * (p(pair.x[0] - pair.y[0]) + p(pair.x[last] - pair.y[last]));
    for (std::size_t k = 1; k < last; ++k) sum += p(pair.x[k] - pair.y[k]);
    return sum * horizon / static_cast<double>(last);
}

QuadratureResult moment_formula(int m, const StableParams& params, const QuadratureConfig& cfg) {
    if (m > 2) raise(ErrorCode::DimensionTooLarge, "moment formula is implemented for m <= 2");
    if (m < 1) raise(ErrorCode::DomainError, "moment order must be 1 or 2");
    params.validate_collision();
    cfg.validate();
    const double a1 = params.alpha1;
    const double a2 = params.alpha2;
    const double horizon = params.horizon;
    const auto rate = [a1, a2](double v) {
        const double abs_v = std::abs(v);
        return std::pow(abs_v, a1) + std::pow(abs_v, a2);
    };

    if (m == 1) {
        const Integrand f = [&rate, horizon](double v) -> Complex {
            const double a = rate(v);
            return a == 0.0 ? horizon : -std::expm1(-a * horizon) / a;
        };
        QuadratureResult result = integrate_real_line_even(f, cfg);
        result *= 1.0 / (2.0 * kPi);
        return result;
    }

    const QuadratureConfig inner = cfg.tightened(0.1);
    const Integrand outer = [&](double v1) -> Complex {
        const double x = rate(v1) * horizon;
        const Integrand f = [&](double v2) -> Complex {
            return simplex2(x, rate(v2) * horizon);
        };
        return integrate_real_line_even(f, inner).value;
    };
    QuadratureResult result = integrate_real_line_even(outer, cfg);
    result *= 2.0 * horizon * horizon / (4.0 * kPi * kPi);
    return result;
}

ExperimentResult run_experiment(const StableParams& params, const MonteCarloConfig& mc,
                                int threads) {
    params.validate();
    mc.validate();
    if (threads < 1) raise(ErrorCode::InvalidConfig, "threads must be >= 1");

    const int steps = mc.halving ? 2 * mc.n_steps : mc.n_steps;
    const double dt = params.horizon / steps;
    const StableSampler sx(params.alpha1, dt);
    const StableSampler sy(params.alpha2, dt);
    const double epsilon = mc.bandwidth(params);
    const HeatKernel coarse_kernel(epsilon);
    MonteCarloConfig fine_cfg = mc;
    fine_cfg.n_steps = steps;
    const double fine_epsilon = mc.epsilon ? 0.5 * *mc.epsilon : fine_cfg.bandwidth(params);
    const HeatKernel fine_kernel(fine_epsilon);
    const double coarse_dt = params.horizon / mc.n_steps;
    const std::size_t n_thresholds = mc.thresholds.size();

    const long n_chunks = (mc.n_paths + kChunkPaths - 1) / kChunkPaths;
    std::vector<ChunkSums> chunks(static_cast<std::size_t>(n_chunks));

    const auto run_chunk = [&](long chunk) {
        ChunkSums& out = chunks[static_cast<std::size_t>(chunk)];
        out.below.assign(n_thresholds, 0);
        const long begin = chunk * kChunkPaths;
        const long end = std::min(mc.n_paths, begin + kChunkPaths);
        for (long path = begin; path < end; ++path) {
            CounterStream stream_x(mc.seed, static_cast<std::uint64_t>(path), kTagX);
            CounterStream stream_y(mc.seed, static_cast<std::uint64_t>(path), kTagY);
            double x = 0.0;
            double y = 0.0;
            double coarse = 0.5 * coarse_kernel(0.0);
            double fine = 0.5 * fine_kernel(0.0);
            for (int j = 1; j <= steps; ++j) {
                x += sx(stream_x);
                y += sy(stream_y);
                const double d = x - y;
                const double w = j == steps ? 0.5 : 1.0;
                if (mc.halving) {
                    fine += w * fine_kernel(d);
                    if (j % 2 == 0) coarse += w * coarse_kernel(d);
                } else {
                    coarse += w * coarse_kernel(d);
                }
            }
            const double estimate = coarse * coarse_dt;
            out.sum += estimate;
            out.sum_sq += estimate * estimate;
            out.sum_l2_sq += estimate * estimate * estimate * estimate;
            for (std::size_t t = 0; t < n_thresholds; ++t) {
                if (estimate <= mc.thresholds[t]) ++out.below[t];
            }
            if (mc.halving) {
                const double fine_estimate = fine * dt;
                out.fine_sum += fine_estimate;
                out.fine_sum_sq += fine_estimate * fine_estimate;
            }
        }
    };

    const int workers = static_cast<int>(std::min<long>(threads, n_chunks));
    if (workers <= 1) {
        for (long c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (long c = next++; c < n_chunks; c = next++) run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }

    ChunkSums total;
    total.below.assign(n_thresholds, 0);
    for (const ChunkSums& c : chunks) {
        total.sum += c.sum;
        total.sum_sq += c.sum_sq;
        total.sum_l2_sq += c.sum_l2_sq;
        total.fine_sum += c.fine_sum;
        total.fine_sum_sq += c.fine_sum_sq;
        for (std::size_t t = 0; t < n_thresholds; ++t) total.below[t] += c.below[t];
    }

    ExperimentResult result;
    result.epsilon = epsilon;
    result.first_moment = summarize(total.sum, total.sum_sq, mc.n_paths);
    result.second_moment = summarize(total.sum_sq, total.sum_l2_sq, mc.n_paths);
    const auto n = static_cast<double>(mc.n_paths);
    for (std::size_t t = 0; t < n_thresholds; ++t) {
        SmallBallRow row;
        row.threshold = mc.thresholds[t];
        row.p_hat.n = mc.n_paths;
        row.p_hat.mean = static_cast<double>(total.below[t]) / n;
        row.p_hat.std_error = std::sqrt(row.p_hat.mean * (1.0 - row.p_hat.mean) / n);
        row.ratio = row.p_hat.mean / row.threshold;
        result.rows.push_back(row);
    }
    if (mc.halving) {
        HalvingShift shift;
        shift.fine_epsilon = fine_epsilon;
        shift.fine_steps = steps;
        shift.fine_mean = summarize(total.fine_sum, total.fine_sum_sq, mc.n_paths);
        shift.shift = std::abs(shift.fine_mean.mean - result.first_moment.mean);
        result.halving = shift;
    }
    return result;
}

std::vector<SmallBallRow> estimate_smallball(const StableParams& params,
                                             const MonteCarloConfig& mc, int threads) {
    if (mc.thresholds.empty()) raise(ErrorCode::InvalidConfig, "thresholds must be nonempty");
    return run_experiment(params, mc, threads).rows;
}

}  // namespace smallball
