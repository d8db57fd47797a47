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

// eecrel command-line front end: scenario evaluation, sweeps, simulation
// checks and figure data.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eecrel.hpp"

namespace {

namespace fs = std::filesystem;

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kSchema = 2,
    kDomain = 3,
    kIo = 4,
};

struct GlobalOptions {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::string out;
    std::string format;
    unsigned threads = 0;
};

int fail(std::string_view kind, int code, std::string_view message) {
    nlohmann::json line = {{"error", kind}, {"exit_code", code}, {"message", message}};
    std::cerr << line.dump() << '\n';
    return code;
}

eecrel::ScenarioDoc load(const GlobalOptions& g) {
    if (g.scenario.empty()) {
        throw eecrel::SchemaError("--scenario is required for this command");
    }
    return eecrel::parse_scenario_text(eecrel::read_file(g.scenario));
}

eecrel::RunOverrides overrides(const GlobalOptions& g) {
    eecrel::RunOverrides ov;
    ov.seed = g.seed;
    ov.samples = g.samples;
    ov.threads = g.threads;
    if (!g.format.empty()) {
        ov.format = eecrel::parse_format(g.format);
    }
    return ov;
}

eecrel::TableFormat output_format(const GlobalOptions& g, const eecrel::ScenarioDoc* doc) {
    if (!g.format.empty()) {
        return *eecrel::parse_format(g.format);
    }
    return doc != nullptr ? doc->output.format : eecrel::TableFormat::Csv;
}

/// Writes a scenario result to --out / output.path, or stdout when neither is set.
void emit(const GlobalOptions& g, const eecrel::ScenarioDoc& doc, const std::string& command,
          const std::string& content, eecrel::TableFormat format) {
    std::optional<fs::path> path;
    if (doc.output.path) {
        path = g.out.empty() ? fs::path(*doc.output.path) : fs::path(g.out) / *doc.output.path;
    } else if (!g.out.empty()) {
        path = fs::path(g.out) / (command + (format == eecrel::TableFormat::Csv ? ".csv" : ".tsv"));
    }
    if (!path) {
        std::cout << content;
        return;
    }
    eecrel::write_file_atomic(*path, content);
    std::cerr << "wrote " << path->string() << '\n';
}

eecrel::McConfig figure_mc(const GlobalOptions& g) {
    auto cfg = eecrel::McConfig::with_samples(g.samples.value_or(eecrel::kDefaultSamples),
                                              g.seed.value_or(eecrel::kDefaultSeed));
    cfg.threads = g.threads;
    return cfg;
}

void write_figure(const GlobalOptions& g, const std::vector<eecrel::NamedTable>& tables) {
    const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
    for (const auto& p : eecrel::write_tables(tables, dir, output_format(g, nullptr))) {
        std::cerr << "wrote " << p.string() << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deadline reliability for edge devices and device systems"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--scenario", g.scenario, "Scenario document (JSON)");
    app.add_option("--seed", g.seed, "Random seed (default 42)");
    app.add_option("--samples", g.samples, "Monte Carlo samples (default 1000000)")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--format", g.format, "csv or tsv (default csv)")->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--threads", g.threads, "Worker threads, 0 = one per core (results do not depend on it)");

    auto* device = app.add_subcommand("device", "Closed-form (and optionally simulated) reliability of each device");
    auto* system = app.add_subcommand("system", "Reliability of the scenario's system");
    auto* sweep = app.add_subcommand("sweep", "Evaluate the scenario's sweep (system if present, else devices)");
    auto* validate = app.add_subcommand("mc-validate", "Check every closed form against simulation");

    eecrel::Figure1Options f1;
    auto* fig1 = app.add_subcommand("figure1", "Task-time CDF curves");
    fig1->add_option("--alpha-a", f1.alpha_a, "Rate for panel (a)");
    fig1->add_option("--xis", f1.xis, "Shapes for panel (a)");
    fig1->add_option("--xi-b", f1.xi_b, "Shape for panel (b)");
    fig1->add_option("--alphas", f1.alphas, "Rates for panel (b)");

    eecrel::Figure2Options f2;
    auto* fig2 = app.add_subcommand("figure2", "Device reliability against utilization and demand");
    fig2->add_option("--deadlines", f2.deadlines, "Deadlines (s)");
    fig2->add_option("--xis", f2.xis, "Tail shapes");
    fig2->add_option("--capacity", f2.capacity, "Capacity C (cycles/s)");

    eecrel::Figure3Options f3;
    auto* fig3 = app.add_subcommand("figure3", "Parallel, SNS and SS system reliability");
    fig3->add_option("--alpha", f3.alpha, "Device rate where fixed");
    fig3->add_option("--n", f3.n_devices, "Number of devices where fixed");
    fig3->add_option("--deadline", f3.deadline, "Deadline where fixed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fail("usage", kSchema, e.what());
    }

    try {
        if (fig1->parsed()) {
            write_figure(g, eecrel::figure1(f1));
            return kOk;
        }
        if (fig2->parsed()) {
            write_figure(g, eecrel::figure2(f2));
            return kOk;
        }
        if (fig3->parsed()) {
            f3.mc = figure_mc(g);
            write_figure(g, eecrel::figure3(f3));
            return kOk;
        }

        const auto doc = load(g);
        const auto ov = overrides(g);
        const auto format = output_format(g, &doc);
        if (validate->parsed()) {
            const auto rows = eecrel::validate(doc, ov);
            emit(g, doc, "mc-validate", eecrel::render(rows, format), format);
            return eecrel::all_pass(rows) ? kOk : kValidationFailed;
        }
        auto kind = eecrel::RunKind::Auto;
        std::string command = "sweep";
        if (device->parsed()) {
            kind = eecrel::RunKind::Device;
            command = "device";
        } else if (system->parsed()) {
            kind = eecrel::RunKind::System;
            command = "system";
        }
        (void)sweep;
        const auto table = eecrel::run_scenario(doc, kind, ov);
        emit(g, doc, command, eecrel::render(table, format), format);
        return kOk;
    } catch (const eecrel::SchemaError& e) {
        return fail("schema", kSchema, e.what());
    } catch (const eecrel::UsageError& e) {
        return fail("schema", kSchema, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail("schema", kSchema, e.what());
    } catch (const eecrel::DomainError& e) {
        return fail("domain", kDomain, e.what());
    } catch (const eecrel::IoError& e) {
        return fail("io", kIo, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail("io", kIo, e.what());
    }
}
