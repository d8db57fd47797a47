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

#ifndef EECREL_SYSTEM_HPP
#define EECREL_SYSTEM_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eecrel/device.hpp"
#include "eecrel/error.hpp"

namespace eecrel {

enum class Topology {
    Parallel,            ///< done when any device finishes
    SeriesNonSequential, ///< done when all devices finish, independently
    SeriesSequential,    ///< devices run one after another, in list order
};

inline std::string_view to_string(Topology t) noexcept {
    switch (t) {
    case Topology::Parallel:
        return "parallel";
    case Topology::SeriesNonSequential:
        return "sns";
    case Topology::SeriesSequential:
        return "ss";
    }
    return "?";
}

inline std::optional<Topology> parse_topology(std::string_view s) noexcept {
    if (s == "parallel") {
        return Topology::Parallel;
    }
    if (s == "sns") {
        return Topology::SeriesNonSequential;
    }
    if (s == "ss") {
        return Topology::SeriesSequential;
    }
    return std::nullopt;
}

/// Devices plus topology. For SeriesSequential the list order is the sub-task
/// order. Device completion times are independent.
class SystemSpec {
public:
    SystemSpec(std::vector<Device> devices, Topology topology)
        : devices_(std::move(devices)), topology_(topology) {
        detail::require(!devices_.empty(), "a system needs at least one device");
    }

    const std::vector<Device>& devices() const noexcept { return devices_; }
    Topology topology() const noexcept { return topology_; }
    std::size_t size() const noexcept { return devices_.size(); }

    SystemSpec with_topology(Topology t) const { return {devices_, t}; }

private:
    std::vector<Device> devices_;
    Topology topology_;
};

namespace detail {

inline void require_topology(const SystemSpec& spec, Topology expected) {
    if (spec.topology() != expected) {
        throw UsageError("system topology is " + std::string(to_string(spec.topology())) +
                         ", operation needs " + std::string(to_string(expected)));
    }
}

} // namespace detail

/// P(max T_i <= t) = prod F_i(t).
inline double sns_reliability(const SystemSpec& spec, double t) {
    detail::require_topology(spec, Topology::SeriesNonSequential);
    double r = 1.0;
    for (const auto& d : spec.devices()) {
        r *= reliability(d, t);
    }
    return r;
}

/// P(min T_i <= t) = 1 - prod(1 - F_i(t)), summed in log-survival space so the
/// result never drops below any single device's reliability.
inline double parallel_reliability(const SystemSpec& spec, double t) {
    detail::require_topology(spec, Topology::Parallel);
    double log_s = 0.0;
    for (const auto& d : spec.devices()) {
        log_s += log_survival(d, t);
    }
    return 0.0 - std::expm1(log_s);
}

/// P(T_1 + ... + T_n <= t) for n iid exponential times of rate alpha
/// (Erlang CDF). Uses the Poisson identity P(Erlang <= t) = P(N(alpha*t) >= n)
/// and sums whichever side of the Poisson mass avoids cancellation.
namespace detail {

// log(e^-x x^k / k!) without the cancellation of the naive form for large k.
inline double log_poisson_pmf(int k, double x) {
    if (k == 0) {
        return -x;
    }
    if (k < 16) {
        return -x + k * std::log(x) - std::lgamma(k + 1.0);
    }
    const double kd = k;
    const double d = (x - kd) / kd;
    const double stirling = 1.0 / (12.0 * kd) - 1.0 / (360.0 * kd * kd * kd) + 1.0 / (1260.0 * std::pow(kd, 5));
    return kd * (std::log1p(d) - d) - 0.5 * std::log(2.0 * std::numbers::pi * kd) - stirling;
}

} // namespace detail

inline double ss_reliability_erlang(int n, double alpha, double t) {
    detail::require(n >= 1, "erlang needs n >= 1");
    detail::require(alpha > 0.0, "erlang needs alpha > 0");
    detail::require(t >= 0.0, "deadline must be non-negative");
    const double x = alpha * t;
    if (x == 0.0) {
        return 0.0;
    }
    // Sum whichever Poisson tail does not cancel, starting from its largest term.
    if (x < static_cast<double>(n)) {
        // Upper tail sum_{k>=n}; terms decay geometrically above the mode.
        const double lead = detail::log_poisson_pmf(n, x);
        double ratio = 1.0;
        double sum = 0.0;
        for (int k = n; ratio > sum * 1e-17; ++k) {
            sum += ratio;
            ratio *= x / (k + 1);
        }
        return std::min(std::exp(lead + std::log(sum)), 1.0);
    }
    const double lead = detail::log_poisson_pmf(n - 1, x);
    double ratio = 1.0;
    double sum = 0.0;
    for (int k = n - 1; k >= 0 && ratio > sum * 1e-17; --k) {
        sum += ratio;
        ratio *= k / x;
    }
    return std::max(0.0, 1.0 - std::exp(lead + std::log(sum)));
}

} // namespace eecrel

#endif // EECREL_SYSTEM_HPP
