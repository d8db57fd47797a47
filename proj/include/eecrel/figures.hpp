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

#ifndef EECREL_FIGURES_HPP
#define EECREL_FIGURES_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "eecrel/csv.hpp"
#include "eecrel/device.hpp"
#include "eecrel/gpd.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/run.hpp"
#include "eecrel/sequential.hpp"
#include "eecrel/system.hpp"

// Plot-ready data for the three reference figures. Parameters not pinned
// down by the model description (curve families, grids, fixed n/alpha/t of
// the system panels) are defaults, overridable through the option structs.

namespace eecrel {

struct NamedTable {
    std::string name;
    Table table;
};

/// `count` evenly spaced points from `lo` to `hi`, both included.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    if (count > 1) {
        out.back() = hi;
    }
    return out;
}

/// Task-time CDF curves.
struct Figure1Options {
    double alpha_a = 2.0;                            ///< panel (a): fixed rate
    std::vector<double> xis = {0.5, 1.0, 2.0, 5.0};  ///< panel (a), plus exponential
    double xi_b = 2.0;                               ///< panel (b): fixed shape
    std::vector<double> alphas = {0.5, 1.0, 2.0, 5.0};
    double t_max = 5.0;
    std::size_t t_points = 501; ///< step 0.01 on [0, 5]
};

inline std::vector<NamedTable> figure1(const Figure1Options& o = {}) {
    const auto ts = linspace(0.0, o.t_max, o.t_points);
    NamedTable a{"figure1a", {}};
    a.table.header = {"x"};
    std::vector<Gpd> curves_a;
    for (double xi : o.xis) {
        curves_a.emplace_back(o.alpha_a, ParetoTail(xi));
        a.table.header.push_back("xi=" + format_param(xi));
    }
    curves_a.emplace_back(o.alpha_a, ExponentialTail{});
    a.table.header.push_back("exponential");
    a.table.comments = {"tool: " + std::string(kToolVersion), "x: deadline t (s)",
                        "series: F(t) at alpha=" + format_param(o.alpha_a)};

    NamedTable b{"figure1b", {}};
    b.table.header = {"x"};
    std::vector<Gpd> curves_b;
    for (double alpha : o.alphas) {
        curves_b.emplace_back(alpha, ParetoTail(o.xi_b));
        b.table.header.push_back("alpha=" + format_param(alpha));
    }
    b.table.comments = {"tool: " + std::string(kToolVersion), "x: deadline t (s)",
                        "series: F(t) at xi=" + format_param(o.xi_b)};

    for (double t : ts) {
        std::vector<double> ra{t};
        for (const auto& g : curves_a) {
            ra.push_back(g.cdf(t));
        }
        a.table.add_row(std::move(ra));
        std::vector<double> rb{t};
        for (const auto& g : curves_b) {
            rb.push_back(g.cdf(t));
        }
        b.table.add_row(std::move(rb));
    }
    return {std::move(a), std::move(b)};
}

/// Device reliability against utilization, demand mean and demand range.
struct Figure2Options {
    double capacity = 1e9;
    double d_mean = 5e9;
    double d_range = 2e9;
    double u_mean = 0.7; ///< panels (b) and (c)
    std::vector<double> deadlines = {5.0, 10.0};
    std::vector<double> xis = {2.0, 5.0};
    std::vector<double> u_grid = linspace(0.0, 1.0, 101);
    std::vector<double> d_mean_grid = linspace(2e9, 1.2e10, 101);
    std::vector<double> d_range_grid = linspace(0.0, 9e9, 101);
};

inline std::vector<NamedTable> figure2(const Figure2Options& o = {}) {
    const auto base_comments = [&](const std::string& x, const std::string& fixed) {
        return std::vector<std::string>{"tool: " + std::string(kToolVersion), "x: " + x,
                                        "fixed: C=" + format_param(o.capacity) + " " + fixed,
                                        "series: R(t) for t;xi combinations"};
    };
    const auto make = [&](std::string name, const std::vector<double>& grid, auto&& device_at,
                          std::vector<std::string> comments) {
        NamedTable nt{std::move(name), {}};
        nt.table.header = {"x"};
        for (double t : o.deadlines) {
            for (double xi : o.xis) {
                nt.table.header.push_back("t=" + format_param(t) + ";xi=" + format_param(xi));
            }
        }
        nt.table.comments = std::move(comments);
        for (double x : grid) {
            std::vector<double> row{x};
            for (double t : o.deadlines) {
                for (double xi : o.xis) {
                    row.push_back(reliability(device_at(x, xi), t));
                }
            }
            nt.table.add_row(std::move(row));
        }
        return nt;
    };
    const auto device = [&](double u_mean, double d_mean, double d_range, double xi) {
        return Device("eed", o.capacity, ParetoTail(xi),
                      ProbabilisticRate{UtilizationSpec::around(u_mean), DemandSpec(d_mean, d_range)});
    };
    std::vector<NamedTable> out;
    out.push_back(make(
        "figure2a", o.u_grid, [&](double x, double xi) { return device(x, o.d_mean, o.d_range, xi); },
        base_comments("mean utilization U_m",
                      "D_m=" + format_param(o.d_mean) + " D_r=" + format_param(o.d_range))));
    out.push_back(make(
        "figure2b", o.d_mean_grid, [&](double x, double xi) { return device(o.u_mean, x, o.d_range, xi); },
        base_comments("mean demand D_m (cycles)",
                      "U_m=" + format_param(o.u_mean) + " D_r=" + format_param(o.d_range))));
    out.push_back(make(
        "figure2c", o.d_range_grid, [&](double x, double xi) { return device(o.u_mean, o.d_mean, x, xi); },
        base_comments("demand range D_r (cycles)",
                      "U_m=" + format_param(o.u_mean) + " D_m=" + format_param(o.d_mean))));
    return out;
}

/// Parallel / SNS / SS reliability of iid exponential devices.
struct Figure3Options {
    double alpha = 0.2;
    std::size_t n_devices = 5;
    double deadline = 10.0;
    std::vector<double> t_grid = linspace(0.0, 50.0, 101);
    std::vector<double> n_grid = linspace(1.0, 50.0, 50);
    std::vector<double> alpha_grid = linspace(0.01, 1.0, 100);
    McConfig mc = McConfig{};
};

inline SystemSpec iid_exponential_system(std::size_t n, double alpha, Topology topology) {
    std::vector<Device> devices;
    devices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        devices.push_back(device_with_rate("eed" + std::to_string(i + 1), alpha, ExponentialTail{}));
    }
    return {std::move(devices), topology};
}

inline std::vector<NamedTable> figure3(const Figure3Options& o = {}) {
    const std::vector<std::string> columns = {"x",       "parallel",  "sns",    "ss",
                                              "ss_stderr", "ss_erlang", "ss_product", "ss_product_stderr"};
    const auto row_for = [&](std::size_t n, double alpha, double t, std::uint64_t panel, std::uint64_t point,
                             double x) {
        const auto spec = iid_exponential_system(n, alpha, Topology::SeriesSequential);
        const McConfig base = point_config(o.mc, panel, point);
        const auto ss = ss_reliability_mc(spec, t, point_config(base, 0, 0));
        const auto product = ss_reliability_product(spec, t, point_config(base, 0, 1));
        return std::vector<double>{x,
                                   parallel_reliability(spec.with_topology(Topology::Parallel), t),
                                   sns_reliability(spec.with_topology(Topology::SeriesNonSequential), t),
                                   ss.mean,
                                   ss.std_error,
                                   ss_reliability_erlang(static_cast<int>(n), alpha, t),
                                   product.mean,
                                   product.std_error};
    };
    const auto make = [&](std::string name, std::string x, std::string fixed) {
        NamedTable nt{std::move(name), {}};
        nt.table.header = columns;
        nt.table.comments = {"tool: " + std::string(kToolVersion), "x: " + std::move(x),
                             "fixed: " + std::move(fixed) + " tail=exponential", describe(o.mc),
                             "ss: simulated P(sum T_i <= t); ss_product: literal product form"};
        return nt;
    };

    auto a = make("figure3a", "deadline t (s)",
                  "n=" + std::to_string(o.n_devices) + " alpha=" + format_param(o.alpha));
    for (std::size_t i = 0; i < o.t_grid.size(); ++i) {
        a.table.add_row(row_for(o.n_devices, o.alpha, o.t_grid[i], 0, i, o.t_grid[i]));
    }
    auto b = make("figure3b", "number of devices n",
                  "t=" + format_param(o.deadline) + " alpha=" + format_param(o.alpha));
    for (std::size_t i = 0; i < o.n_grid.size(); ++i) {
        const auto n = detail::as_device_count(o.n_grid[i]);
        b.table.add_row(row_for(n, o.alpha, o.deadline, 1, i, o.n_grid[i]));
    }
    auto c = make("figure3c", "task execution rate alpha (1/s)",
                  "n=" + std::to_string(o.n_devices) + " t=" + format_param(o.deadline));
    for (std::size_t i = 0; i < o.alpha_grid.size(); ++i) {
        c.table.add_row(row_for(o.n_devices, o.alpha_grid[i], o.deadline, 2, i, o.alpha_grid[i]));
    }
    return {std::move(a), std::move(b), std::move(c)};
}

/// Writes each table to `<dir>/<name>.csv` (or .tsv); returns the paths.
inline std::vector<std::filesystem::path> write_tables(const std::vector<NamedTable>& tables,
                                                       const std::filesystem::path& dir, TableFormat format) {
    std::vector<std::filesystem::path> paths;
    for (const auto& nt : tables) {
        auto path = dir / (nt.name + (format == TableFormat::Csv ? ".csv" : ".tsv"));
        write_file_atomic(path, render(nt.table, format));
        paths.push_back(std::move(path));
    }
    return paths;
}

} // namespace eecrel

#endif // EECREL_FIGURES_HPP
