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

#ifndef EECREL_RATE_HPP
#define EECREL_RATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "eecrel/error.hpp"
#include "eecrel/random.hpp"

namespace eecrel {

/// Resource utilization U ~ Uniform[u_min, u_max], 0 <= u_min <= u_max <= 1.
class UtilizationSpec {
public:
    UtilizationSpec(double u_min, double u_max) : min_(u_min), max_(u_max) {
        detail::require(u_min >= 0.0 && u_min <= u_max && u_max <= 1.0,
                        "utilization requires 0 <= u_min <= u_max <= 1");
    }

    /// Interval centred on `u_mean` with half-width `half_width`, narrowed
    /// as needed to stay inside [0, 1] so that the mean is preserved.
    static UtilizationSpec around(double u_mean, double half_width = kDefaultHalfWidth) {
        detail::require(u_mean >= 0.0 && u_mean <= 1.0, "utilization mean must lie in [0, 1]");
        detail::require(half_width >= 0.0, "utilization half-width must be non-negative");
        const double h = std::min({half_width, u_mean, 1.0 - u_mean});
        return {u_mean - h, u_mean + h};
    }

    static constexpr double kDefaultHalfWidth = 0.1;

    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    double mean() const noexcept { return 0.5 * (min_ + max_); }
    double half_width() const noexcept { return 0.5 * (max_ - min_); }

    double sample(Engine& rng) const { return uniform(rng, min_, max_); }

private:
    double min_;
    double max_;
};

/// Task demand D ~ Uniform[d_mean - d_range/2, d_mean + d_range/2] (cycles).
class DemandSpec {
public:
    DemandSpec(double d_mean, double d_range) : mean_(d_mean), range_(d_range) {
        detail::require(std::isfinite(d_mean) && std::isfinite(d_range) && d_range >= 0.0,
                        "demand requires finite values and d_range >= 0");
        detail::require(min() > 0.0, "demand requires d_min > 0");
    }

    double mean() const noexcept { return mean_; }
    double range() const noexcept { return range_; }
    double min() const noexcept { return mean_ - 0.5 * range_; }
    double max() const noexcept { return mean_ + 0.5 * range_; }

    double sample(Engine& rng) const { return uniform(rng, min(), max()); }

private:
    double mean_;
    double range_;
};

struct ProfilePoint {
    double tau;
    double u;
    double d;
};

/// Deterministic u(tau), d(tau) given at sample points; the ratio u/d is
/// linearly interpolated between them.
class TimeProfile {
public:
    explicit TimeProfile(std::vector<ProfilePoint> points) : points_(std::move(points)) {
        detail::require(points_.size() >= 2, "time profile needs at least 2 points");
        detail::require(points_.front().tau == 0.0, "time profile must start at tau = 0");
        for (std::size_t k = 0; k < points_.size(); ++k) {
            const auto& p = points_[k];
            detail::require(p.u >= 0.0 && p.u <= 1.0, "profile utilization must lie in [0, 1]");
            detail::require(p.d > 0.0, "profile demand must be positive");
            if (k > 0) {
                detail::require(p.tau > points_[k - 1].tau, "profile times must be strictly increasing");
            }
        }
    }

    const std::vector<ProfilePoint>& points() const noexcept { return points_; }
    double horizon() const noexcept { return points_.back().tau; }

    /// Integral of u/d over [0, t] by the trapezoid rule, exact for the
    /// interpolated ratio.
    double integral(double t) const {
        detail::require(t >= 0.0 && t <= horizon(), "time lies outside the profile support");
        double acc = 0.0;
        for (std::size_t k = 1; k < points_.size(); ++k) {
            const auto& a = points_[k - 1];
            const auto& b = points_[k];
            const double ra = a.u / a.d;
            const double rb = b.u / b.d;
            if (t >= b.tau) {
                acc += 0.5 * (ra + rb) * (b.tau - a.tau);
                continue;
            }
            if (t > a.tau) {
                const double w = (t - a.tau) / (b.tau - a.tau);
                const double rt = ra + w * (rb - ra);
                acc += 0.5 * (ra + rt) * (t - a.tau);
            }
            break;
        }
        return acc;
    }

private:
    std::vector<ProfilePoint> points_;
};

namespace detail {

inline void require_capacity(double c) {
    require(std::isfinite(c) && c > 0.0, "capacity must be finite and > 0");
}

} // namespace detail

/// lambda = u*C/d in tasks per second.
inline double constant_rate(double u, double capacity_c, double d) {
    detail::require(u >= 0.0 && u <= 1.0, "utilization must lie in [0, 1]");
    detail::require_capacity(capacity_c);
    detail::require(d > 0.0, "demand must be positive");
    return u * capacity_c / d;
}

/// Relative half-range below which E[1/D] switches to its series expansion.
inline constexpr double kSmallRangeThreshold = 1e-6;

/// E[1/D] = (ln d_max - ln d_min) / d_range for uniform D.
///
/// Written as 2*atanh(x)/d_range with x = d_range/(2*d_mean), which equals the
/// log difference but does not cancel; for tiny ranges the series
/// (1 + x^2/3 + x^4/5)/d_mean is used.
inline double inverse_uniform_mean(const DemandSpec& demand) {
    const double m = demand.mean();
    const double r = demand.range();
    if (r < kSmallRangeThreshold * m) {
        const double x2 = (r / (2.0 * m)) * (r / (2.0 * m));
        return (1.0 + x2 / 3.0 + x2 * x2 / 5.0) / m;
    }
    return 2.0 * std::atanh(r / (2.0 * m)) / r;
}

/// alpha = C * E[U] * E[1/D], with U and D independent uniforms.
inline double mean_rate_probabilistic(double capacity_c, const UtilizationSpec& util,
                                      const DemandSpec& demand) {
    detail::require_capacity(capacity_c);
    return capacity_c * util.mean() * inverse_uniform_mean(demand);
}

/// alpha(t) = (C/t) * integral_0^t u(tau)/d(tau) dtau.
inline double mean_rate_time_varying(double capacity_c, const TimeProfile& profile, double t) {
    detail::require_capacity(capacity_c);
    detail::require(t > 0.0, "time-varying rate needs t > 0");
    return capacity_c * profile.integral(t) / t;
}

/// One independent draw of u*C/d.
inline double sample_rate(double capacity_c, const UtilizationSpec& util, const DemandSpec& demand,
                          Engine& rng) {
    const double u = util.sample(rng);
    const double d = demand.sample(rng);
    return u * capacity_c / d;
}

} // namespace eecrel

#endif // EECREL_RATE_HPP
