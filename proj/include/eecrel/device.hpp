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

#ifndef EECREL_DEVICE_HPP
#define EECREL_DEVICE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eecrel/error.hpp"
#include "eecrel/gpd.hpp"
#include "eecrel/rate.hpp"

namespace eecrel {

/// Fixed utilization and demand.
struct ConstantRate {
    double u;
    double d;
};

/// Independent uniform utilization and demand.
struct ProbabilisticRate {
    UtilizationSpec utilization;
    DemandSpec demand;
};

/// Deterministic utilization and demand profiles over time.
struct TimeVaryingRate {
    TimeProfile profile;
};

using RateSpec = std::variant<ConstantRate, ProbabilisticRate, TimeVaryingRate>;

/// A user-owned compute device: capacity, tail constant and rate model.
class Device {
public:
    Device(std::string id, double capacity_c, TailParam tail, RateSpec rate)
        : id_(std::move(id)), capacity_(capacity_c), tail_(tail), rate_(std::move(rate)) {
        detail::require_capacity(capacity_);
        if (const auto* c = std::get_if<ConstantRate>(&rate_)) {
            // Validates u and d.
            (void)constant_rate(c->u, capacity_, c->d);
        }
    }

    const std::string& id() const noexcept { return id_; }
    double capacity() const noexcept { return capacity_; }
    const TailParam& tail() const noexcept { return tail_; }
    const RateSpec& rate() const noexcept { return rate_; }

    Device with_tail(TailParam tail) const { return {id_, capacity_, tail, rate_}; }
    Device with_rate(RateSpec rate) const { return {id_, capacity_, tail_, std::move(rate)}; }
    Device with_capacity(double c) const { return {id_, c, tail_, rate_}; }
    Device with_id(std::string id) const { return {std::move(id), capacity_, tail_, rate_}; }

private:
    std::string id_;
    double capacity_;
    TailParam tail_;
    RateSpec rate_;
};

/// Device whose mean rate is exactly `alpha` (u = 1, C = 1, d = 1/alpha).
inline Device device_with_rate(std::string id, double alpha, TailParam tail) {
    detail::require(std::isfinite(alpha) && alpha > 0.0, "alpha must be finite and > 0");
    return {std::move(id), 1.0, tail, ConstantRate{1.0, 1.0 / alpha}};
}

/// Mean task execution rate alpha of the device. Zero is possible (u = 0).
/// `t_horizon` is required for time-varying rates, which average up to it.
inline double mean_rate(const Device& dev, std::optional<double> t_horizon = std::nullopt) {
    return std::visit(
        [&](const auto& r) -> double {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ConstantRate>) {
                return constant_rate(r.u, dev.capacity(), r.d);
            } else if constexpr (std::is_same_v<R, ProbabilisticRate>) {
                return mean_rate_probabilistic(dev.capacity(), r.utilization, r.demand);
            } else {
                detail::require(t_horizon.has_value(), "time-varying rate needs a horizon");
                return mean_rate_time_varying(dev.capacity(), r.profile, *t_horizon);
            }
        },
        dev.rate());
}

/// Gpd with the device's mean rate and tail. Throws DomainError when the rate
/// is zero, since no such distribution exists.
inline Gpd effective_gpd(const Device& dev, std::optional<double> t_horizon = std::nullopt) {
    return {mean_rate(dev, t_horizon), dev.tail()};
}

/// log P(T > t). Zero when the device never completes (alpha = 0).
inline double log_survival(const Device& dev, double t) {
    detail::require(t >= 0.0, "deadline must be non-negative");
    if (t == 0.0) {
        return 0.0;
    }
    const double alpha = mean_rate(dev, t);
    if (alpha == 0.0) {
        return 0.0;
    }
    return Gpd(alpha, dev.tail()).log_survival(t);
}

/// Probability that the device finishes its task by deadline t. The mean
/// rate is plugged into the task-time CDF; time-varying rates are averaged
/// up to the deadline itself.
inline double reliability(const Device& dev, double t) {
    return 0.0 - std::expm1(log_survival(dev, t));
}

struct CurvePoint {
    double t;
    double reliability;
};

inline std::vector<CurvePoint> reliability_curve(const Device& dev, const std::vector<double>& t_grid) {
    std::vector<CurvePoint> out;
    out.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        detail::require(t_grid[i] >= 0.0, "deadline grid must be non-negative");
        detail::require(i == 0 || t_grid[i] >= t_grid[i - 1], "deadline grid must be sorted");
        out.push_back({t_grid[i], reliability(dev, t_grid[i])});
    }
    return out;
}

} // namespace eecrel

#endif // EECREL_DEVICE_HPP
