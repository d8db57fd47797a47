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

#ifndef EECREL_GPD_HPP
#define EECREL_GPD_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "eecrel/error.hpp"
#include "eecrel/random.hpp"

namespace eecrel {

/// Finite tail shape xi > 0. Smaller xi means a heavier tail.
class ParetoTail {
public:
    explicit ParetoTail(double xi) : xi_(xi) {
        detail::require(std::isfinite(xi) && xi > 0.0, "pareto tail requires finite xi > 0");
    }

    double xi() const noexcept { return xi_; }

    friend bool operator==(const ParetoTail&, const ParetoTail&) = default;

private:
    double xi_;
};

/// The xi -> infinity limit, where the task time is exponential.
struct ExponentialTail {
    friend bool operator==(const ExponentialTail&, const ExponentialTail&) = default;
};

using TailParam = std::variant<ParetoTail, ExponentialTail>;

inline bool is_exponential(const TailParam& tail) noexcept {
    return std::holds_alternative<ExponentialTail>(tail);
}

inline std::string describe(const TailParam& tail) {
    if (const auto* p = std::get_if<ParetoTail>(&tail)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "xi=%g", p->xi());
        return buf;
    }
    return "exponential";
}

/// Task-time distribution of one device:
///
///   F(t) = 1 - (1 + t*alpha/xi)^(-xi)   (finite xi)
///   F(t) = 1 - exp(-alpha*t)            (exponential)
///
/// alpha is the mean execution rate in tasks per second.
class Gpd {
public:
    Gpd(double alpha, TailParam tail) : alpha_(alpha), tail_(tail) {
        detail::require(std::isfinite(alpha) && alpha > 0.0, "gpd requires finite alpha > 0");
    }

    double alpha() const noexcept { return alpha_; }
    const TailParam& tail() const noexcept { return tail_; }

    /// log S(t). Exact to rounding for both tiny and huge t.
    double log_survival(double t) const {
        check_time(t);
        if (const auto* p = std::get_if<ParetoTail>(&tail_)) {
            return -p->xi() * std::log1p(t * alpha_ / p->xi());
        }
        return -alpha_ * t;
    }

    double cdf(double t) const { return 0.0 - std::expm1(log_survival(t)); }

    double survival(double t) const { return std::exp(log_survival(t)); }

    double pdf(double t) const {
        check_time(t);
        if (const auto* p = std::get_if<ParetoTail>(&tail_)) {
            return alpha_ * std::exp((-p->xi() - 1.0) * std::log1p(t * alpha_ / p->xi()));
        }
        return alpha_ * std::exp(-alpha_ * t);
    }

    double quantile(double p) const {
        detail::require(p >= 0.0 && p < 1.0, "quantile requires p in [0, 1)");
        // -log(1-p) is the cumulative hazard at the quantile.
        const double hazard = -std::log1p(-p);
        if (const auto* pt = std::get_if<ParetoTail>(&tail_)) {
            return pt->xi() / alpha_ * std::expm1(hazard / pt->xi());
        }
        return hazard / alpha_;
    }

    /// Inverse-transform draw.
    double sample(Engine& rng) const { return quantile(uniform01(rng)); }

    /// First moment, or nullopt when it does not exist (xi <= 1).
    std::optional<double> mean() const {
        if (const auto* p = std::get_if<ParetoTail>(&tail_)) {
            if (p->xi() <= 1.0) {
                return std::nullopt;
            }
            return 1.0 / (alpha_ * (1.0 - 1.0 / p->xi()));
        }
        return 1.0 / alpha_;
    }

    /// Whether E[T^k] is finite; for finite tails that is xi > k.
    bool moment_defined(int k) const {
        detail::require(k >= 1, "moment order must be >= 1");
        if (const auto* p = std::get_if<ParetoTail>(&tail_)) {
            return p->xi() > static_cast<double>(k);
        }
        return true;
    }

private:
    static void check_time(double t) {
        detail::require(t >= 0.0, "time must be non-negative");
    }

    double alpha_;
    TailParam tail_;
};

} // namespace eecrel

#endif // EECREL_GPD_HPP
