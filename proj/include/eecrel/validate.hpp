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

#ifndef EECREL_VALIDATE_HPP
#define EECREL_VALIDATE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eecrel/csv.hpp"
#include "eecrel/device.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/run.hpp"
#include "eecrel/scenario.hpp"
#include "eecrel/system.hpp"

namespace eecrel {

/// Number of standard errors a simulation may deviate from a closed form.
inline constexpr double kValidationSigmas = 4.0;

/// One closed form checked against its simulated counterpart.
struct ValidationRow {
    std::string subject;
    double t = 0.0;
    double closed_form = 0.0;
    Estimate simulated;
    double gap = 0.0;
    double bound = 0.0;
    bool pass = false;
};

inline ValidationRow compare(std::string subject, double t, double closed_form, const Estimate& simulated) {
    ValidationRow r;
    r.subject = std::move(subject);
    r.t = t;
    r.closed_form = closed_form;
    r.simulated = simulated;
    r.gap = std::abs(simulated.mean - closed_form);
    const double null_se = std::sqrt(std::clamp(closed_form * (1.0 - closed_form), 0.0, 0.25) /
                                     static_cast<double>(simulated.n));
    r.bound = kValidationSigmas * std::max(simulated.std_error, null_se);
    r.pass = within_stderr(simulated, closed_form, kValidationSigmas);
    return r;
}

/// Closed form of `analytic` against a mean-rate simulation of `simulated`.
/// The two differ only when a test wants to prove a mismatch is caught.
inline ValidationRow check_device(const Device& analytic, const Device& simulated, double t, McConfig cfg) {
    cfg.mode = SamplingMode::MeanRate;
    return compare("device:" + simulated.id(), t, reliability(analytic, t),
                   estimate_device_reliability(simulated, t, cfg));
}

namespace detail {

/// Common rate when every device is exponential with the same constant
/// rate, which makes the series-sequential system Erlang.
inline std::optional<double> iid_exponential_rate(const SystemSpec& spec) {
    std::optional<double> alpha;
    for (const auto& d : spec.devices()) {
        if (!is_exponential(d.tail()) || std::holds_alternative<TimeVaryingRate>(d.rate())) {
            return std::nullopt;
        }
        const double a = mean_rate(d);
        if (a <= 0.0 || (alpha && *alpha != a)) {
            return std::nullopt;
        }
        alpha = a;
    }
    return alpha;
}

} // namespace detail

/// Every closed form in `spec` at t against simulation.
inline std::vector<ValidationRow> check_system(const SystemSpec& spec, double t, const McConfig& cfg) {
    McConfig c = cfg;
    c.mode = SamplingMode::MeanRate;
    const std::string name = "system:" + std::string(to_string(spec.topology()));
    switch (spec.topology()) {
    case Topology::Parallel:
        return {compare(name, t, parallel_reliability(spec, t), estimate_system_reliability(spec, t, c))};
    case Topology::SeriesNonSequential:
        return {compare(name, t, sns_reliability(spec, t), estimate_system_reliability(spec, t, c))};
    case Topology::SeriesSequential:
        break;
    }
    if (const auto alpha = detail::iid_exponential_rate(spec)) {
        return {compare(name + ":erlang", t, ss_reliability_erlang(static_cast<int>(spec.size()), *alpha, t),
                        estimate_system_reliability(spec, t, c))};
    }
    return {};
}

/// Deadlines a document is validated at: the deadline grid when the deadline
/// is swept, otherwise sweep.fixed.deadline.
inline std::vector<double> validation_deadlines(const ScenarioDoc& doc) {
    if (!doc.sweep) {
        throw SchemaError("validation needs a sweep section giving deadlines");
    }
    if (doc.sweep->variable == SweepVariable::Deadline) {
        return doc.sweep->grid;
    }
    const auto it = doc.sweep->fixed.find(SweepVariable::Deadline);
    if (it == doc.sweep->fixed.end() || !std::holds_alternative<double>(it->second)) {
        throw SchemaError("validation needs sweep.fixed.deadline");
    }
    return {std::get<double>(it->second)};
}

/// Checks every device and closed-form system of the document. Swept
/// parameters other than the deadline are held at their fixed values.
inline std::vector<ValidationRow> validate(const ScenarioDoc& doc, const RunOverrides& ov = {}) {
    const McConfig cfg = effective_mc(doc, ov);
    const auto deadlines = validation_deadlines(doc);
    SweepPoint p = fixed_point(doc);
    std::vector<ValidationRow> rows;
    for (std::size_t i = 0; i < deadlines.size(); ++i) {
        p.deadline = deadlines[i];
        detail::require(p.deadline >= 0.0, "deadline must be non-negative");
        for (std::size_t k = 0; k < p.devices.size(); ++k) {
            rows.push_back(check_device(p.devices[k], p.devices[k], p.deadline, point_config(cfg, i, k)));
        }
        if (doc.system) {
            for (auto& r : check_system(system_at(doc, p), p.deadline, point_config(cfg, i, p.devices.size()))) {
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

inline bool all_pass(const std::vector<ValidationRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

inline std::string render(const std::vector<ValidationRow>& rows, TableFormat format = TableFormat::Csv) {
    const char sep = format == TableFormat::Csv ? ',' : '\t';
    std::string out = "subject";
    for (const char* h : {"t", "closed_form", "mc", "mc_stderr", "abs_gap", "bound_4se", "status"}) {
        out += sep;
        out += h;
    }
    out += '\n';
    for (const auto& r : rows) {
        out += r.subject;
        for (double v : {r.t, r.closed_form, r.simulated.mean, r.simulated.std_error, r.gap, r.bound}) {
            out += sep;
            out += format_number(v);
        }
        out += sep;
        out += r.pass ? "PASS" : "FAIL";
        out += '\n';
    }
    return out;
}

} // namespace eecrel

#endif // EECREL_VALIDATE_HPP
