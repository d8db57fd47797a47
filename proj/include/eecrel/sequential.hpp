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

#ifndef EECREL_SEQUENTIAL_HPP
#define EECREL_SEQUENTIAL_HPP

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "eecrel/device.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/system.hpp"

// Series-sequential systems have no closed form for heterogeneous devices, so
// they are estimated by simulation.

namespace eecrel {

/// P(T_1 + ... + T_n <= t), estimated by simulation. This is the reliability
/// of record for series-sequential systems.
inline Estimate ss_reliability_mc(const SystemSpec& spec, double t, const McConfig& cfg) {
    detail::require_topology(spec, Topology::SeriesSequential);
    return estimate_system_reliability(spec, t, cfg);
}

namespace detail {

/// F_i(r) for one device; the rate is cached unless it depends on r.
class DeviceCdf {
public:
    explicit DeviceCdf(const Device& dev) : dev_(&dev) {
        if (!std::holds_alternative<TimeVaryingRate>(dev.rate())) {
            alpha_ = mean_rate(dev);
        }
    }

    double operator()(double r) const {
        if (r <= 0.0) {
            return 0.0;
        }
        if (!alpha_) {
            return reliability(*dev_, r);
        }
        if (*alpha_ == 0.0) {
            return 0.0;
        }
        return Gpd(*alpha_, dev_->tail()).cdf(r);
    }

private:
    const Device* dev_;
    std::optional<double> alpha_;
};

} // namespace detail

/// Literal product form for series-sequential systems: the sample mean of
///
///   prod_i F_i(max(t - sum_{j<i} T_j, 0))
///
/// over unconditional draws of T_1..T_{n-1}. It is not P(sum T_i <= t)
/// (for two iid exponentials it equals F(t) * P(T_1 + T_2 <= t)) and is
/// reported next to ss_reliability_mc for comparison only.
inline Estimate ss_reliability_product(const SystemSpec& spec, double t, const McConfig& cfg) {
    detail::require_topology(spec, Topology::SeriesSequential);
    detail::require(t >= 0.0, "deadline must be non-negative");
    cfg.validate();
    const auto& devices = spec.devices();
    std::vector<detail::DeviceCdf> cdfs;
    cdfs.reserve(devices.size());
    for (const auto& d : devices) {
        cdfs.emplace_back(d);
    }
    const double first = cdfs.front()(t);
    if (devices.size() == 1 || first == 0.0) {
        return make_estimate(first, 0.0, cfg.n_samples);
    }
    // Only T_1..T_{n-1} are ever drawn.
    std::vector<TaskTimeSampler> samplers;
    samplers.reserve(devices.size() - 1);
    for (std::size_t i = 0; i + 1 < devices.size(); ++i) {
        samplers.emplace_back(devices[i], cfg.mode, t);
    }
    return estimate_bounded_mean(cfg, [&](Engine& rng) {
        double product = first;
        double elapsed = 0.0;
        for (std::size_t i = 1; i < cdfs.size(); ++i) {
            elapsed += samplers[i - 1](rng);
            const double remaining = t - elapsed;
            if (remaining <= 0.0) {
                return 0.0;
            }
            product *= cdfs[i](remaining);
        }
        return product;
    });
}

} // namespace eecrel

#endif // EECREL_SEQUENTIAL_HPP
