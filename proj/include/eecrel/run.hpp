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

#ifndef EECREL_RUN_HPP
#define EECREL_RUN_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eecrel/csv.hpp"
#include "eecrel/device.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/random.hpp"
#include "eecrel/scenario.hpp"
#include "eecrel/sequential.hpp"
#include "eecrel/system.hpp"

namespace eecrel {

/// Command-line values that take precedence over the document.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<TableFormat> format;
    unsigned threads = 0;
};

enum class RunKind {
    Auto,   ///< system evaluation when the document has a system, else devices
    Device, ///< every device on its own
    System, ///< the document's system; an error without one
};

/// Document mc section (or defaults) with overrides applied.
inline McConfig effective_mc(const ScenarioDoc& doc, const RunOverrides& ov) {
    McConfig c = doc.mc.value_or(McConfig{});
    if (ov.samples) {
        c.n_samples = *ov.samples;
        c.n_blocks = std::min(c.n_blocks, c.n_samples);
    }
    if (ov.seed) {
        c.seed = *ov.seed;
    }
    c.threads = ov.threads;
    if (c.n_samples == 0) {
        throw SchemaError("--samples must be >= 1");
    }
    return c;
}

inline std::string describe(const McConfig& c) {
    return "mc: n_samples=" + std::to_string(c.n_samples) + " seed=" + std::to_string(c.seed) +
           " n_blocks=" + std::to_string(c.n_blocks) + " mode=" + std::string(to_string(c.mode));
}

/// Device with one parameter replaced. Raises SchemaError when the parameter
/// does not apply to the device's rate model.
inline Device apply_param(const Device& dev, SweepVariable var, const ParamValue& value) {
    if (var == SweepVariable::Xi) {
        if (std::holds_alternative<ExponentialTail>(value)) {
            return dev.with_tail(ExponentialTail{});
        }
        return dev.with_tail(ParetoTail(std::get<double>(value)));
    }
    if (!std::holds_alternative<double>(value)) {
        throw SchemaError(std::string(to_string(var)) + ": expected a number");
    }
    const double v = std::get<double>(value);
    const auto not_applicable = [&] {
        return SchemaError(std::string(to_string(var)) + " does not apply to device '" + dev.id() + "'");
    };
    switch (var) {
    case SweepVariable::Alpha:
        detail::require(std::isfinite(v) && v > 0.0, "alpha must be finite and > 0");
        return dev.with_rate(ConstantRate{1.0, dev.capacity() / v});
    case SweepVariable::UMean:
        if (const auto* c = std::get_if<ConstantRate>(&dev.rate())) {
            return dev.with_rate(ConstantRate{v, c->d});
        }
        if (const auto* p = std::get_if<ProbabilisticRate>(&dev.rate())) {
            return dev.with_rate(ProbabilisticRate{UtilizationSpec::around(v, p->utilization.half_width()), p->demand});
        }
        throw not_applicable();
    case SweepVariable::DMean:
        if (const auto* c = std::get_if<ConstantRate>(&dev.rate())) {
            return dev.with_rate(ConstantRate{c->u, v});
        }
        if (const auto* p = std::get_if<ProbabilisticRate>(&dev.rate())) {
            return dev.with_rate(ProbabilisticRate{p->utilization, DemandSpec(v, p->demand.range())});
        }
        throw not_applicable();
    case SweepVariable::DRange:
        if (const auto* p = std::get_if<ProbabilisticRate>(&dev.rate())) {
            return dev.with_rate(ProbabilisticRate{p->utilization, DemandSpec(p->demand.mean(), v)});
        }
        throw not_applicable();
    case SweepVariable::Deadline:
    case SweepVariable::NDevices:
    case SweepVariable::Xi:
        break;
    }
    return dev;
}

/// Model inputs at one point of a sweep.
struct SweepPoint {
    double deadline = 0.0;
    std::vector<Device> devices;
    std::optional<std::uint64_t> n_devices;
};

namespace detail {

inline std::uint64_t as_device_count(double v) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) {
        throw SchemaError("n_devices must be a positive integer");
    }
    return static_cast<std::uint64_t>(v);
}

inline void apply(SweepPoint& p, SweepVariable var, const ParamValue& value) {
    if (var == SweepVariable::Deadline) {
        if (!std::holds_alternative<double>(value)) {
            throw SchemaError("deadline: expected a number");
        }
        p.deadline = std::get<double>(value);
        require(p.deadline >= 0.0, "deadline must be non-negative");
        return;
    }
    if (var == SweepVariable::NDevices) {
        if (!std::holds_alternative<double>(value)) {
            throw SchemaError("n_devices: expected a number");
        }
        p.n_devices = as_device_count(std::get<double>(value));
        return;
    }
    for (auto& d : p.devices) {
        d = apply_param(d, var, value);
    }
}

} // namespace detail

/// Document devices with only the sweep's fixed parameters applied.
inline SweepPoint fixed_point(const ScenarioDoc& doc) {
    SweepPoint p;
    p.devices = doc.devices;
    if (doc.sweep) {
        for (const auto& [var, value] : doc.sweep->fixed) {
            detail::apply(p, var, value);
        }
    }
    return p;
}

/// Inputs for grid point `index` of the document's sweep.
inline SweepPoint sweep_point(const ScenarioDoc& doc, std::size_t index) {
    if (!doc.sweep) {
        throw SchemaError("this command needs a sweep section");
    }
    const auto& sweep = *doc.sweep;
    SweepPoint p;
    p.devices = doc.devices;
    if (sweep.variable != SweepVariable::Deadline && !sweep.fixed.contains(SweepVariable::Deadline)) {
        throw SchemaError("sweep.fixed.deadline is required unless the deadline is swept");
    }
    for (const auto& [var, value] : sweep.fixed) {
        detail::apply(p, var, value);
    }
    detail::apply(p, sweep.variable, sweep.grid.at(index));
    return p;
}

/// The document's system at a sweep point; n_devices repeats the listed
/// devices cyclically.
inline SystemSpec system_at(const ScenarioDoc& doc, const SweepPoint& p) {
    if (!doc.system) {
        throw SchemaError("this command needs a system section");
    }
    const auto& ids = doc.system->device_ids;
    const auto lookup = [&](const std::string& id) -> const Device& {
        for (const auto& d : p.devices) {
            if (d.id() == id) {
                return d;
            }
        }
        throw SchemaError("unknown device id '" + id + "'");
    };
    std::vector<Device> members;
    const std::uint64_t n = p.n_devices.value_or(ids.size());
    members.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        members.push_back(lookup(ids[i % ids.size()]));
    }
    return {std::move(members), doc.system->topology};
}

inline McConfig point_config(const McConfig& base, std::uint64_t point, std::uint64_t column) {
    McConfig c = base;
    c.seed = derive_seed(derive_seed(base.seed, point), column);
    return c;
}

/// Evaluates the document over its sweep grid. One row per grid point; the
/// first column is the swept value.
inline Table run_scenario(const ScenarioDoc& doc, RunKind kind, const RunOverrides& ov = {}) {
    if (!doc.sweep) {
        throw SchemaError("this command needs a sweep section");
    }
    if (kind == RunKind::Auto) {
        kind = doc.system ? RunKind::System : RunKind::Device;
    }
    if (kind == RunKind::System && !doc.system) {
        throw SchemaError("this command needs a system section");
    }
    if (kind == RunKind::Device && doc.sweep->variable == SweepVariable::NDevices) {
        throw SchemaError("n_devices can only be swept for a system");
    }
    const McConfig cfg = effective_mc(doc, ov);
    const bool with_mc = doc.mc.has_value() || ov.samples.has_value();

    Table table;
    table.header.push_back("x");
    table.comments.push_back("tool: " + std::string(kToolVersion));
    table.comments.push_back("x: " + std::string(to_string(doc.sweep->variable)));
    table.comments.push_back(std::string("evaluation: ") + (kind == RunKind::System ? "system" : "device"));

    if (kind == RunKind::Device) {
        for (const auto& d : doc.devices) {
            table.header.push_back(d.id());
            if (with_mc) {
                table.header.push_back(d.id() + "_mc");
                table.header.push_back(d.id() + "_mc_stderr");
            }
        }
    } else {
        const std::string top(to_string(doc.system->topology));
        if (doc.system->topology == Topology::SeriesSequential) {
            table.header.insert(table.header.end(), {"ss", "ss_stderr", "ss_product", "ss_product_stderr"});
        } else {
            table.header.push_back(top);
            if (with_mc) {
                table.header.push_back(top + "_mc");
                table.header.push_back(top + "_mc_stderr");
            }
        }
    }
    if (with_mc || (kind == RunKind::System && doc.system->topology == Topology::SeriesSequential)) {
        table.comments.push_back(describe(cfg));
    }
    table.comments.push_back("scenario: " + doc.canonical);

    for (std::size_t i = 0; i < doc.sweep->grid.size(); ++i) {
        const SweepPoint p = sweep_point(doc, i);
        std::vector<double> row{doc.sweep->grid[i]};
        if (kind == RunKind::Device) {
            for (std::size_t k = 0; k < p.devices.size(); ++k) {
                row.push_back(reliability(p.devices[k], p.deadline));
                if (with_mc) {
                    const auto e = estimate_device_reliability(p.devices[k], p.deadline, point_config(cfg, i, k));
                    row.push_back(e.mean);
                    row.push_back(e.std_error);
                }
            }
        } else {
            const SystemSpec spec = system_at(doc, p);
            if (spec.topology() == Topology::SeriesSequential) {
                const auto ss = ss_reliability_mc(spec, p.deadline, point_config(cfg, i, 0));
                const auto product = ss_reliability_product(spec, p.deadline, point_config(cfg, i, 1));
                row.insert(row.end(), {ss.mean, ss.std_error, product.mean, product.std_error});
            } else {
                row.push_back(spec.topology() == Topology::Parallel ? parallel_reliability(spec, p.deadline)
                                                                     : sns_reliability(spec, p.deadline));
                if (with_mc) {
                    const auto e = estimate_system_reliability(spec, p.deadline, point_config(cfg, i, 0));
                    row.push_back(e.mean);
                    row.push_back(e.std_error);
                }
            }
        }
        table.add_row(std::move(row));
    }
    return table;
}

} // namespace eecrel

#endif // EECREL_RUN_HPP
