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

#ifndef EECREL_SCENARIO_HPP
#define EECREL_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "eecrel/csv.hpp"
#include "eecrel/device.hpp"
#include "eecrel/error.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/system.hpp"

// Scenario documents: JSON, UTF-8, schema in schema/scenario.schema.json.
// Parsing is fail-closed: unknown keys and wrong types are schema errors.
// Values that parse but violate a model constraint (xi <= 0, d_min <= 0, ...)
// surface as DomainError from the model constructors.

namespace eecrel {

inline constexpr int kSchemaVersion = 1;

enum class SweepVariable { Deadline, NDevices, Alpha, UMean, DMean, DRange, Xi };

inline constexpr std::pair<SweepVariable, std::string_view> kSweepVariableNames[] = {
    {SweepVariable::Deadline, "deadline"}, {SweepVariable::NDevices, "n_devices"},
    {SweepVariable::Alpha, "alpha"},       {SweepVariable::UMean, "u_mean"},
    {SweepVariable::DMean, "d_mean"},      {SweepVariable::DRange, "d_range"},
    {SweepVariable::Xi, "xi"},
};

inline std::string_view to_string(SweepVariable v) noexcept {
    for (const auto& [var, name] : kSweepVariableNames) {
        if (var == v) {
            return name;
        }
    }
    return "?";
}

inline std::optional<SweepVariable> parse_sweep_variable(std::string_view s) noexcept {
    for (const auto& [var, name] : kSweepVariableNames) {
        if (name == s) {
            return var;
        }
    }
    return std::nullopt;
}

/// Parameter value in a sweep's `fixed` map; xi may also be exponential.
using ParamValue = std::variant<double, ExponentialTail>;

struct SweepSpec {
    SweepVariable variable = SweepVariable::Deadline;
    std::vector<double> grid;
    std::map<SweepVariable, ParamValue> fixed;
};

struct SystemDesc {
    Topology topology = Topology::Parallel;
    std::vector<std::string> device_ids;
};

struct OutputSpec {
    std::optional<std::string> path;
    TableFormat format = TableFormat::Csv;
};

struct ScenarioDoc {
    int schema_version = kSchemaVersion;
    std::vector<Device> devices;
    std::optional<SystemDesc> system;
    std::optional<SweepSpec> sweep;
    std::optional<McConfig> mc;
    OutputSpec output;
    /// Canonical (key-sorted, compact) form of the source document.
    std::string canonical;

    const Device& device(std::string_view id) const {
        for (const auto& d : devices) {
            if (d.id() == id) {
                return d;
            }
        }
        throw SchemaError("unknown device id '" + std::string(id) + "'");
    }
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed,
                       std::initializer_list<std::string_view> required = {}) {
    if (!obj.is_object()) {
        throw SchemaError(std::string(where) + ": expected an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SchemaError(std::string(where) + ": unknown key '" + key + "'");
        }
    }
    for (auto key : required) {
        if (!obj.contains(key)) {
            throw SchemaError(std::string(where) + ": missing key '" + std::string(key) + "'");
        }
    }
}

inline double get_number(const json& obj, std::string_view key, std::string_view where) {
    const auto& v = obj.at(std::string(key));
    if (!v.is_number()) {
        throw SchemaError(std::string(where) + "." + std::string(key) + ": expected a number");
    }
    return v.get<double>();
}

inline std::string get_string(const json& obj, std::string_view key, std::string_view where) {
    const auto& v = obj.at(std::string(key));
    if (!v.is_string()) {
        throw SchemaError(std::string(where) + "." + std::string(key) + ": expected a string");
    }
    return v.get<std::string>();
}

inline std::uint64_t get_count(const json& obj, std::string_view key, std::string_view where) {
    const auto& v = obj.at(std::string(key));
    if (!v.is_number_unsigned()) {
        throw SchemaError(std::string(where) + "." + std::string(key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline TailParam parse_tail(const json& j, const std::string& where) {
    check_keys(j, where, {"kind", "xi"}, {"kind"});
    const auto kind = get_string(j, "kind", where);
    if (kind == "exponential") {
        if (j.contains("xi")) {
            throw SchemaError(where + ": exponential tail takes no xi");
        }
        return ExponentialTail{};
    }
    if (kind == "pareto") {
        if (!j.contains("xi")) {
            throw SchemaError(where + ": pareto tail needs xi");
        }
        return ParetoTail(get_number(j, "xi", where));
    }
    throw SchemaError(where + ".kind: expected 'pareto' or 'exponential'");
}

inline UtilizationSpec parse_utilization(const json& j, const std::string& where) {
    check_keys(j, where, {"min", "max", "mean", "half_width"});
    const bool by_bounds = j.contains("min") || j.contains("max");
    const bool by_mean = j.contains("mean") || j.contains("half_width");
    if (by_bounds == by_mean) {
        throw SchemaError(where + ": give either {min, max} or {mean[, half_width]}");
    }
    if (by_bounds) {
        check_keys(j, where, {"min", "max"}, {"min", "max"});
        return {get_number(j, "min", where), get_number(j, "max", where)};
    }
    check_keys(j, where, {"mean", "half_width"}, {"mean"});
    const double hw = j.contains("half_width") ? get_number(j, "half_width", where)
                                               : UtilizationSpec::kDefaultHalfWidth;
    return UtilizationSpec::around(get_number(j, "mean", where), hw);
}

inline RateSpec parse_rate(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) {
        throw SchemaError(where + ": expected an object with 'kind'");
    }
    const auto kind = get_string(j, "kind", where);
    if (kind == "constant") {
        check_keys(j, where, {"kind", "u", "d"}, {"u", "d"});
        return ConstantRate{get_number(j, "u", where), get_number(j, "d", where)};
    }
    if (kind == "probabilistic") {
        check_keys(j, where, {"kind", "utilization", "demand"}, {"utilization", "demand"});
        const auto& dj = j.at("demand");
        const std::string dwhere = where + ".demand";
        check_keys(dj, dwhere, {"mean", "range"}, {"mean", "range"});
        return ProbabilisticRate{parse_utilization(j.at("utilization"), where + ".utilization"),
                                 DemandSpec(get_number(dj, "mean", dwhere), get_number(dj, "range", dwhere))};
    }
    if (kind == "time_varying") {
        check_keys(j, where, {"kind", "profile"}, {"profile"});
        const auto& pj = j.at("profile");
        if (!pj.is_array()) {
            throw SchemaError(where + ".profile: expected an array");
        }
        std::vector<ProfilePoint> points;
        for (std::size_t k = 0; k < pj.size(); ++k) {
            const std::string pwhere = where + ".profile[" + std::to_string(k) + "]";
            check_keys(pj[k], pwhere, {"tau", "u", "d"}, {"tau", "u", "d"});
            points.push_back({get_number(pj[k], "tau", pwhere), get_number(pj[k], "u", pwhere),
                              get_number(pj[k], "d", pwhere)});
        }
        return TimeVaryingRate{TimeProfile(std::move(points))};
    }
    throw SchemaError(where + ".kind: expected 'constant', 'probabilistic' or 'time_varying'");
}

inline Device parse_device(const json& j, const std::string& where) {
    check_keys(j, where, {"id", "capacity_c", "tail", "rate"}, {"id", "capacity_c", "tail", "rate"});
    auto id = get_string(j, "id", where);
    if (id.empty()) {
        throw SchemaError(where + ".id: must be non-empty");
    }
    return {std::move(id), get_number(j, "capacity_c", where), parse_tail(j.at("tail"), where + ".tail"),
            parse_rate(j.at("rate"), where + ".rate")};
}

inline SweepSpec parse_sweep(const json& j) {
    check_keys(j, "sweep", {"variable", "grid", "fixed"}, {"variable", "grid"});
    SweepSpec s;
    const auto name = get_string(j, "variable", "sweep");
    const auto var = parse_sweep_variable(name);
    if (!var) {
        throw SchemaError("sweep.variable: unknown variable '" + name + "'");
    }
    s.variable = *var;
    const auto& grid = j.at("grid");
    if (!grid.is_array() || grid.empty()) {
        throw SchemaError("sweep.grid: expected a non-empty array of numbers");
    }
    for (const auto& v : grid) {
        if (!v.is_number()) {
            throw SchemaError("sweep.grid: expected numbers");
        }
        s.grid.push_back(v.get<double>());
    }
    if (!std::is_sorted(s.grid.begin(), s.grid.end())) {
        throw SchemaError("sweep.grid: must be sorted ascending");
    }
    if (j.contains("fixed")) {
        const auto& fj = j.at("fixed");
        if (!fj.is_object()) {
            throw SchemaError("sweep.fixed: expected an object");
        }
        for (const auto& [key, value] : fj.items()) {
            const auto fv = parse_sweep_variable(key);
            if (!fv) {
                throw SchemaError("sweep.fixed: unknown parameter '" + key + "'");
            }
            if (*fv == s.variable) {
                throw SchemaError("sweep.fixed: '" + key + "' is also the swept variable");
            }
            if (value.is_number()) {
                s.fixed.emplace(*fv, value.get<double>());
            } else if (*fv == SweepVariable::Xi && value == "exponential") {
                s.fixed.emplace(*fv, ExponentialTail{});
            } else {
                throw SchemaError("sweep.fixed." + key + ": expected a number");
            }
        }
    }
    return s;
}

inline McConfig parse_mc(const json& j) {
    check_keys(j, "mc", {"n_samples", "seed", "n_blocks", "mode"});
    McConfig c;
    if (j.contains("n_samples")) {
        c.n_samples = get_count(j, "n_samples", "mc");
    }
    c.n_blocks = j.contains("n_blocks") ? get_count(j, "n_blocks", "mc")
                                        : std::clamp<std::uint64_t>(c.n_samples, 1, kDefaultBlocks);
    if (j.contains("seed")) {
        c.seed = get_count(j, "seed", "mc");
    }
    if (j.contains("mode")) {
        const auto m = parse_sampling_mode(get_string(j, "mode", "mc"));
        if (!m) {
            throw SchemaError("mc.mode: expected 'mean_rate' or 'per_task_rate'");
        }
        c.mode = *m;
    }
    if (c.n_samples == 0 || c.n_blocks == 0 || c.n_blocks > c.n_samples) {
        throw SchemaError("mc: need n_samples >= 1 and 1 <= n_blocks <= n_samples");
    }
    return c;
}

} // namespace detail

/// Parses and validates a scenario document.
inline ScenarioDoc parse_scenario(const nlohmann::json& j) {
    using detail::check_keys;
    check_keys(j, "scenario", {"schema_version", "devices", "system", "sweep", "mc", "output"},
               {"schema_version", "devices"});
    ScenarioDoc doc;
    const auto& ver = j.at("schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion) {
        throw SchemaError("schema_version: only version " + std::to_string(kSchemaVersion) + " is supported");
    }
    const auto& dj = j.at("devices");
    if (!dj.is_array() || dj.empty()) {
        throw SchemaError("devices: expected a non-empty array");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < dj.size(); ++i) {
        doc.devices.push_back(detail::parse_device(dj[i], "devices[" + std::to_string(i) + "]"));
        if (!ids.insert(doc.devices.back().id()).second) {
            throw SchemaError("devices: duplicate id '" + doc.devices.back().id() + "'");
        }
    }
    if (j.contains("system")) {
        const auto& sj = j.at("system");
        check_keys(sj, "system", {"topology", "devices"}, {"topology", "devices"});
        SystemDesc sys;
        const auto top = parse_topology(detail::get_string(sj, "topology", "system"));
        if (!top) {
            throw SchemaError("system.topology: expected 'parallel', 'sns' or 'ss'");
        }
        sys.topology = *top;
        const auto& list = sj.at("devices");
        if (!list.is_array() || list.empty()) {
            throw SchemaError("system.devices: expected a non-empty array of ids");
        }
        for (const auto& id : list) {
            if (!id.is_string()) {
                throw SchemaError("system.devices: expected strings");
            }
            if (!ids.contains(id.get<std::string>())) {
                throw SchemaError("system.devices: unknown device id '" + id.get<std::string>() + "'");
            }
            sys.device_ids.push_back(id.get<std::string>());
        }
        doc.system = std::move(sys);
    }
    if (j.contains("sweep")) {
        doc.sweep = detail::parse_sweep(j.at("sweep"));
    }
    if (j.contains("mc")) {
        doc.mc = detail::parse_mc(j.at("mc"));
    }
    if (j.contains("output")) {
        const auto& oj = j.at("output");
        check_keys(oj, "output", {"path", "format"});
        if (oj.contains("path")) {
            doc.output.path = detail::get_string(oj, "path", "output");
        }
        if (oj.contains("format")) {
            const auto f = parse_format(detail::get_string(oj, "format", "output"));
            if (!f) {
                throw SchemaError("output.format: expected 'csv' or 'tsv'");
            }
            doc.output.format = *f;
        }
    }
    doc.canonical = j.dump();
    return doc;
}

inline ScenarioDoc parse_scenario_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

} // namespace eecrel

#endif // EECREL_SCENARIO_HPP
