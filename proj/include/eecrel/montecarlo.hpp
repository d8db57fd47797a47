// Copyright 2026 The eecrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EECREL_MONTECARLO_HPP
#define EECREL_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "eecrel/device.hpp"
#include "eecrel/error.hpp"
#include "eecrel/gpd.hpp"
#include "eecrel/random.hpp"
#include "eecrel/system.hpp"

namespace eecrel {

/// How a device's task time is simulated.
enum class SamplingMode {
    MeanRate,    ///< T ~ Gpd(alpha, xi) with alpha the mean rate (the closed-form model)
    PerTaskRate, ///< draw (u, d) per task, then T ~ Gpd(u*C/d, xi)
};

inline std::string_view to_string(SamplingMode m) noexcept {
    return m == SamplingMode::MeanRate ? "mean_rate" : "per_task_rate";
}

inline std::optional<SamplingMode> parse_sampling_mode(std::string_view s) noexcept {
    if (s == "mean_rate") {
        return SamplingMode::MeanRate;
    }
    if (s == "per_task_rate") {
        return SamplingMode::PerTaskRate;
    }
    return std::nullopt;
}

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::uint64_t kDefaultBlocks = 64;

struct McConfig {
    std::uint64_t n_samples = kDefaultSamples;
    std::uint64_t seed = kDefaultSeed;
    /// Replication blocks; block k always draws from substream(seed, k).
    std::uint64_t n_blocks = kDefaultBlocks;
    SamplingMode mode = SamplingMode::MeanRate;
    /// Worker threads, 0 for one per core. Never affects results.
    unsigned threads = 0;

    void validate() const {
        detail::require(n_samples >= 1, "n_samples must be >= 1");
        detail::require(n_blocks >= 1 && n_blocks <= n_samples, "n_blocks must lie in [1, n_samples]");
    }

    /// Config with `n` samples and as many blocks as allowed, up to the default.
    static McConfig with_samples(std::uint64_t n, std::uint64_t seed = kDefaultSeed) {
        McConfig c;
        c.n_samples = n;
        c.seed = seed;
        c.n_blocks = std::clamp<std::uint64_t>(n, 1, kDefaultBlocks);
        return c;
    }
};

/// Monte Carlo probability estimate with a normal-approximation 95% interval.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    std::uint64_t n = 0;

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// Estimate of an unbounded mean (rates, times).
struct SampleMean {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

inline Estimate make_estimate(double mean, double std_error, std::uint64_t n) {
    Estimate e;
    e.mean = std::clamp(mean, 0.0, 1.0);
    e.std_error = std_error;
    e.ci95_low = std::clamp(e.mean - kZ95 * std_error, 0.0, 1.0);
    e.ci95_high = std::clamp(e.mean + kZ95 * std_error, 0.0, 1.0);
    e.n = n;
    return e;
}

/// Bernoulli estimator: hits / n with stderr sqrt(p(1-p)/n).
inline Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return make_estimate(p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n);
}

/// Whether `est` agrees with `reference` within k standard errors. The larger
/// of the estimated and the reference-implied Bernoulli stderr is used, so a
/// run that saw no hits is still compared sensibly against a tiny probability.
inline bool within_stderr(const Estimate& est, double reference, double k) {
    const double n = static_cast<double>(est.n);
    const double null_se = std::sqrt(std::clamp(reference * (1.0 - reference), 0.0, 0.25) / n);
    return std::abs(est.mean - reference) <= k * std::max(est.std_error, null_se);
}

/// Splits cfg.n_samples over cfg.n_blocks and runs `block(index, count, rng)`
/// on each, with rng = substream(cfg.seed, index). Returns the per-block
/// results in block order, whatever the thread count.
template <typename Fn>
auto run_blocks(const McConfig& cfg, Fn&& block)
    -> std::vector<std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t, Engine&>> {
    cfg.validate();
    using Acc = std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t, Engine&>;
    const std::uint64_t n_blocks = cfg.n_blocks;
    const std::uint64_t base = cfg.n_samples / n_blocks;
    const std::uint64_t extra = cfg.n_samples % n_blocks;

    std::vector<Acc> results(n_blocks);
    auto run_one = [&](std::uint64_t k) {
        Engine rng = substream(cfg.seed, k);
        results[k] = block(k, base + (k < extra ? 1 : 0), rng);
    };

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));
    if (workers <= 1) {
        for (std::uint64_t k = 0; k < n_blocks; ++k) {
            run_one(k);
        }
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t k = next++; k < n_blocks; k = next++) {
                        run_one(k);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = n_blocks;
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

/// Fraction of draws for which `hit(rng)` is true.
template <typename Hit>
Estimate estimate_probability(const McConfig& cfg, Hit&& hit) {
    const auto counts = run_blocks(cfg, [&](std::uint64_t, std::uint64_t count, Engine& rng) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            hits += hit(rng) ? 1 : 0;
        }
        return hits;
    });
    std::uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    return bernoulli_estimate(total, cfg.n_samples);
}

namespace detail {

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

template <typename Draw>
Moments accumulate_moments(const McConfig& cfg, Draw& draw) {
    const auto blocks = run_blocks(cfg, [&](std::uint64_t, std::uint64_t count, Engine& rng) {
        Moments m;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double x = draw(rng);
            m.sum += x;
            m.sum_sq += x * x;
        }
        return m;
    });
    Moments total;
    for (const auto& b : blocks) {
        total.sum += b.sum;
        total.sum_sq += b.sum_sq;
    }
    return total;
}

inline double sample_std_error(const Moments& m, std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double mean = m.sum / nn;
    if (n < 2) {
        return 0.0;
    }
    const double var = std::max(0.0, (m.sum_sq - nn * mean * mean) / (nn - 1.0));
    return std::sqrt(var / nn);
}

} // namespace detail

/// Sample mean of `draw(rng)` with its standard error.
template <typename Draw>
SampleMean estimate_mean(const McConfig& cfg, Draw&& draw) {
    const auto m = detail::accumulate_moments(cfg, draw);
    return {m.sum / static_cast<double>(cfg.n_samples), detail::sample_std_error(m, cfg.n_samples),
            cfg.n_samples};
}

/// Sample mean of a [0, 1]-valued `draw(rng)`, as a probability estimate with
/// the sample (not Bernoulli) standard error.
template <typename Draw>
Estimate estimate_bounded_mean(const McConfig& cfg, Draw&& draw) {
    const auto m = detail::accumulate_moments(cfg, draw);
    return make_estimate(m.sum / static_cast<double>(cfg.n_samples),
                         detail::sample_std_error(m, cfg.n_samples), cfg.n_samples);
}

/// Precomputed task-time sampler for one device, mode and horizon.
class TaskTimeSampler {
public:
    TaskTimeSampler(const Device& dev, SamplingMode mode, std::optional<double> t_horizon = std::nullopt)
        : tail_(dev.tail()), capacity_(dev.capacity()) {
        const auto* prob = std::get_if<ProbabilisticRate>(&dev.rate());
        if (mode == SamplingMode::PerTaskRate && prob != nullptr) {
            per_task_.emplace(*prob);
            return;
        }
        if (std::holds_alternative<TimeVaryingRate>(dev.rate()) && !t_horizon) {
            throw DomainError("time-varying device needs a horizon to sample");
        }
        alpha_ = mean_rate(dev, t_horizon);
    }

    double operator()(Engine& rng) const {
        double alpha = alpha_;
        if (per_task_) {
            alpha = sample_rate(capacity_, per_task_->utilization, per_task_->demand, rng);
        }
        const double u = uniform_open01(rng);
        if (!(alpha > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        const double hazard = -std::log1p(-u);
        if (const auto* p = std::get_if<ParetoTail>(&tail_)) {
            return p->xi() / alpha * std::expm1(hazard / p->xi());
        }
        return hazard / alpha;
    }

private:
    TailParam tail_;
    double capacity_;
    double alpha_ = 0.0;
    std::optional<ProbabilisticRate> per_task_;
};

/// One task time for `dev`. A device with zero rate never finishes (+inf).
inline double sample_task_time(const Device& dev, SamplingMode mode, Engine& rng,
                               std::optional<double> t_horizon = std::nullopt) {
    return TaskTimeSampler(dev, mode, t_horizon)(rng);
}

/// Fraction of simulated task times not exceeding t.
inline Estimate estimate_device_reliability(const Device& dev, double t, const McConfig& cfg) {
    detail::require(t >= 0.0, "deadline must be non-negative");
    cfg.validate();
    if (t == 0.0) {
        return bernoulli_estimate(0, cfg.n_samples);
    }
    const TaskTimeSampler sampler(dev, cfg.mode, t);
    return estimate_probability(cfg, [&](Engine& rng) { return sampler(rng) <= t; });
}

namespace detail {

inline std::vector<TaskTimeSampler> make_samplers(const SystemSpec& spec, SamplingMode mode, double t) {
    std::vector<TaskTimeSampler> out;
    out.reserve(spec.size());
    for (const auto& d : spec.devices()) {
        out.emplace_back(d, mode, t);
    }
    return out;
}

} // namespace detail

/// Empirical system reliability: Parallel counts min T_i <= t, SNS counts
/// max T_i <= t, SS counts sum T_i <= t. Each draw stops as soon as its
/// outcome is decided.
inline Estimate estimate_system_reliability(const SystemSpec& spec, double t, const McConfig& cfg) {
    detail::require(t >= 0.0, "deadline must be non-negative");
    cfg.validate();
    if (t == 0.0) {
        return bernoulli_estimate(0, cfg.n_samples);
    }
    const auto samplers = detail::make_samplers(spec, cfg.mode, t);
    switch (spec.topology()) {
    case Topology::Parallel:
        return estimate_probability(cfg, [&](Engine& rng) {
            for (const auto& s : samplers) {
                if (s(rng) <= t) {
                    return true;
                }
            }
            return false;
        });
    case Topology::SeriesNonSequential:
        return estimate_probability(cfg, [&](Engine& rng) {
            for (const auto& s : samplers) {
                if (s(rng) > t) {
                    return false;
                }
            }
            return true;
        });
    case Topology::SeriesSequential:
        break;
    }
    return estimate_probability(cfg, [&](Engine& rng) {
        double elapsed = 0.0;
        for (const auto& s : samplers) {
            elapsed += s(rng);
            if (elapsed > t) {
                return false;
            }
        }
        return true;
    });
}

/// Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)| of `samples` against g.
inline double ks_distance(std::span<const double> samples, const Gpd& g) {
    detail::require(!samples.empty(), "ks_distance needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = g.cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) {
    return 1.63 / std::sqrt(static_cast<double>(n));
}

} // namespace eecrel

#endif // EECREL_MONTECARLO_HPP
