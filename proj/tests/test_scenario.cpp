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

#include "eecrel.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <locale>
#include <string>

using eecrel::DomainError;
using eecrel::RunKind;
using eecrel::SchemaError;

namespace fs = std::filesystem;

namespace {

const char* kTwoStage = R"({
  "schema_version": 1,
  "devices": [{
    "id": "eed1", "capacity_c": 1e9, "tail": {"kind": "exponential"},
    "rate": {"kind": "probabilistic", "utilization": {"mean": 0.7}, "demand": {"mean": 5e9, "range": 2e9}}
  }],
  "sweep": {"variable": "deadline", "grid": [10]}
})";

const char* kSystem = R"({
  "schema_version": 1,
  "devices": [
    {"id": "a", "capacity_c": 1, "tail": {"kind": "exponential"}, "rate": {"kind": "constant", "u": 1, "d": 5}},
    {"id": "b", "capacity_c": 1e9, "tail": {"kind": "pareto", "xi": 3},
     "rate": {"kind": "probabilistic", "utilization": {"min": 0.5, "max": 0.9}, "demand": {"mean": 5e9, "range": 2e9}}}
  ],
  "system": {"topology": "TOPOLOGY", "devices": ["a", "b"]},
  "sweep": {"variable": "deadline", "grid": [0, 5, 10, 20]},
  "mc": {"n_samples": 20000, "seed": 7}
})";

std::string with_topology(const std::string& top) {
    std::string s = kSystem;
    s.replace(s.find("TOPOLOGY"), 8, top);
    return s;
}

eecrel::ScenarioDoc parse(const std::string& s) { return eecrel::parse_scenario_text(s); }

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    s.replace(pos, from.size(), to);
    return s;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("eecrel_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

} // namespace

TEST(NumberFormat, NineSignificantDigits) {
    EXPECT_EQ(eecrel::format_number(0.7580750871325256), "0.758075087");
    EXPECT_EQ(eecrel::format_number(0.0), "0");
    EXPECT_EQ(eecrel::format_number(1e9), "1e+09");
    EXPECT_EQ(eecrel::format_number(123456789.0), "123456789");
    EXPECT_EQ(eecrel::format_number(2.0273255405408219e-10), "2.02732554e-10");
    EXPECT_EQ(eecrel::format_number(10.0), "10");
}

TEST(NumberFormat, IgnoresGlobalLocale) {
    struct Comma : std::numpunct<char> {
        char do_decimal_point() const override { return ','; }
        std::string do_grouping() const override { return "\3"; }
    };
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(), new Comma));
    EXPECT_EQ(eecrel::format_number(12345.5), "12345.5");
    eecrel::Table t;
    t.header = {"x"};
    t.add_row({0.5});
    EXPECT_EQ(eecrel::render(t), "x\n0.5\n");
    std::locale::global(saved);
}

TEST(CsvRender, HeaderThenCommentsThenRows) {
    eecrel::Table t;
    t.header = {"x", "a"};
    t.comments = {"tool: test"};
    t.add_row({1.0, 0.25});
    EXPECT_EQ(eecrel::render(t), "x,a\n# tool: test\n1,0.25\n");
    EXPECT_EQ(eecrel::render(t, eecrel::TableFormat::Tsv), "x\ta\n# tool: test\n1\t0.25\n");
    EXPECT_THROW(t.add_row({1.0}), std::logic_error);
}

TEST(ParseScenario, ReferenceDocument) {
    const auto doc = parse(kTwoStage);
    ASSERT_EQ(doc.devices.size(), 1u);
    EXPECT_EQ(doc.devices[0].id(), "eed1");
    EXPECT_FALSE(doc.system.has_value());
    EXPECT_FALSE(doc.mc.has_value());
    ASSERT_TRUE(doc.sweep.has_value());
    EXPECT_EQ(doc.sweep->variable, eecrel::SweepVariable::Deadline);
}

TEST(ParseScenario, SchemaViolations) {
    const std::string base = kTwoStage;
    EXPECT_THROW(parse("{"), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"schema_version\": 1", "\"schema_version\": 2")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"schema_version\": 1,", "\"schema_version\": 1, \"extra\": 0,")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"kind\": \"exponential\"", "\"kind\": \"weibull\"")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"kind\": \"exponential\"", "\"kind\": \"pareto\"")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"capacity_c\": 1e9", "\"capacity_c\": \"fast\"")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"grid\": [10]", "\"grid\": []")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"grid\": [10]", "\"grid\": [10, 5]")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"variable\": \"deadline\"", "\"variable\": \"speed\"")), SchemaError);
    EXPECT_THROW(parse(replace(base, "\"grid\": [10]", "\"grid\": [10], \"fixed\": {\"deadline\": 3}")), SchemaError);
    EXPECT_THROW(parse(replace(base, "{\"mean\": 0.7}", "{\"mean\": 0.7, \"min\": 0.1}")), SchemaError);
    EXPECT_THROW(parse(R"({"schema_version": 1, "devices": []})"), SchemaError);
}

TEST(ParseScenario, SystemValidation) {
    EXPECT_NO_THROW(parse(with_topology("sns")));
    EXPECT_THROW(parse(with_topology("mesh")), SchemaError);
    EXPECT_THROW(parse(replace(with_topology("ss"), "[\"a\", \"b\"]", "[\"a\", \"zz\"]")), SchemaError);
    const std::string dup = replace(with_topology("ss"), "\"id\": \"b\"", "\"id\": \"a\"");
    EXPECT_THROW(parse(dup), SchemaError);
    EXPECT_THROW(parse(replace(with_topology("ss"), "\"seed\": 7", "\"seed\": -7")), SchemaError);
    EXPECT_THROW(parse(replace(with_topology("ss"), "\"seed\": 7", "\"seed\": 7, \"n_blocks\": 30000")), SchemaError);
}

TEST(ParseScenario, ModelViolationsAreDomainErrors) {
    const std::string base = kTwoStage;
    EXPECT_THROW(parse(replace(base, "{\"kind\": \"exponential\"}", "{\"kind\": \"pareto\", \"xi\": -1}")), DomainError);
    EXPECT_THROW(parse(replace(base, "\"range\": 2e9", "\"range\": 2e10")), DomainError);
    EXPECT_THROW(parse(replace(base, "{\"mean\": 0.7}", "{\"min\": 0.9, \"max\": 0.1}")), DomainError);
}

TEST(RunScenario, MinimalDocumentAtZeroDeadline) {
    const auto doc = parse(R"({"schema_version": 1,
        "devices": [{"id": "e", "capacity_c": 1, "tail": {"kind": "exponential"}, "rate": {"kind": "constant", "u": 1, "d": 1}}],
        "sweep": {"variable": "deadline", "grid": [0]}})");
    const auto table = eecrel::run_scenario(doc, RunKind::Auto);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.header, (std::vector<std::string>{"x", "e"}));
    EXPECT_EQ(table.rows[0][1], 0.0);
}

TEST(RunScenario, ReferenceDevice) {
    const auto table = eecrel::run_scenario(parse(kTwoStage), RunKind::Device);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_NEAR(table.rows[0][1], 0.758075087, 1e-9);
    EXPECT_NE(eecrel::render(table).find("\n10,0.758075087\n"), std::string::npos);
}

TEST(RunScenario, RequiresSweepAndSystemWhereNeeded) {
    auto doc = parse(kTwoStage);
    EXPECT_THROW(eecrel::run_scenario(doc, RunKind::System), SchemaError);
    doc.sweep.reset();
    EXPECT_THROW(eecrel::run_scenario(doc, RunKind::Device), SchemaError);
    const auto no_deadline = parse(replace(kTwoStage, "\"variable\": \"deadline\", \"grid\": [10]",
                                           "\"variable\": \"u_mean\", \"grid\": [0.5]"));
    EXPECT_THROW(eecrel::run_scenario(no_deadline, RunKind::Device), SchemaError);
}

TEST(RunScenario, UtilizationSweepMatchesDirectEvaluation) {
    const auto doc = parse(replace(kTwoStage, "\"variable\": \"deadline\", \"grid\": [10]",
                                   "\"variable\": \"u_mean\", \"grid\": [0, 0.25, 0.5, 0.7, 1], \"fixed\": {\"deadline\": 10, \"xi\": 2}"));
    const auto table = eecrel::run_scenario(doc, RunKind::Device);
    ASSERT_EQ(table.rows.size(), 5u);
    for (const auto& row : table.rows) {
        const eecrel::Device d("eed1", 1e9, eecrel::ParetoTail(2.0),
                               eecrel::ProbabilisticRate{eecrel::UtilizationSpec::around(row[0]), eecrel::DemandSpec(5e9, 2e9)});
        EXPECT_EQ(row[1], eecrel::reliability(d, 10.0));
    }
}

TEST(RunScenario, AlphaAndXiSweeps) {
    const auto doc = parse(replace(kTwoStage, "\"variable\": \"deadline\", \"grid\": [10]",
                                   "\"variable\": \"alpha\", \"grid\": [0.1, 0.2], \"fixed\": {\"deadline\": 10, \"xi\": \"exponential\"}"));
    const auto table = eecrel::run_scenario(doc, RunKind::Device);
    EXPECT_NEAR(table.rows[0][1], 1 - std::exp(-1.0), 1e-14);
    EXPECT_NEAR(table.rows[1][1], 1 - std::exp(-2.0), 1e-14);

    const auto xi = parse(replace(kTwoStage, "\"variable\": \"deadline\", \"grid\": [10]",
                                  "\"variable\": \"xi\", \"grid\": [1.5, 2, 5], \"fixed\": {\"deadline\": 10}"));
    const auto col = eecrel::run_scenario(xi, RunKind::Device).column("eed1");
    EXPECT_LT(col[0], col[1]);
    EXPECT_LT(col[1], col[2]);
}

TEST(RunScenario, InapplicableParameterIsSchemaError) {
    const auto doc = parse(R"({"schema_version": 1,
        "devices": [{"id": "e", "capacity_c": 1, "tail": {"kind": "exponential"}, "rate": {"kind": "constant", "u": 1, "d": 1}}],
        "sweep": {"variable": "d_range", "grid": [0.1], "fixed": {"deadline": 1}}})");
    EXPECT_THROW(eecrel::run_scenario(doc, RunKind::Device), SchemaError);
    const auto count = parse(replace(kTwoStage, "\"variable\": \"deadline\", \"grid\": [10]",
                                     "\"variable\": \"n_devices\", \"grid\": [1, 2], \"fixed\": {\"deadline\": 10}"));
    EXPECT_THROW(eecrel::run_scenario(count, RunKind::Device), SchemaError);
}

TEST(RunScenario, SystemTopologies) {
    for (const std::string top : {"parallel", "sns"}) {
        const auto doc = parse(with_topology(top));
        const auto table = eecrel::run_scenario(doc, RunKind::Auto);
        EXPECT_EQ(table.header, (std::vector<std::string>{"x", top, top + "_mc", top + "_mc_stderr"}));
        const auto spec = eecrel::system_at(doc, eecrel::sweep_point(doc, 2));
        const double closed = top == "parallel" ? eecrel::parallel_reliability(spec, 10.0) : eecrel::sns_reliability(spec, 10.0);
        EXPECT_EQ(table.rows[2][1], closed);
        EXPECT_NEAR(table.rows[2][2], closed, 4 * table.rows[2][3] + 1e-3);
    }
    const auto ss = eecrel::run_scenario(parse(with_topology("ss")), RunKind::System);
    EXPECT_EQ(ss.header, (std::vector<std::string>{"x", "ss", "ss_stderr", "ss_product", "ss_product_stderr"}));
    EXPECT_EQ(ss.rows[0][1], 0.0);
}

TEST(RunScenario, DeviceCountSweepRepeatsDevices) {
    const auto doc = parse(replace(with_topology("parallel"), "\"variable\": \"deadline\", \"grid\": [0, 5, 10, 20]",
                                   "\"variable\": \"n_devices\", \"grid\": [1, 2, 3, 4], \"fixed\": {\"deadline\": 10}"));
    const auto table = eecrel::run_scenario(doc, RunKind::System);
    const auto col = table.column("parallel");
    for (std::size_t i = 1; i < col.size(); ++i) {
        EXPECT_GT(col[i], col[i - 1]);
    }
    EXPECT_EQ(eecrel::system_at(doc, eecrel::sweep_point(doc, 3)).size(), 4u);
    const auto bad = parse(replace(with_topology("parallel"), "\"variable\": \"deadline\", \"grid\": [0, 5, 10, 20]",
                                   "\"variable\": \"n_devices\", \"grid\": [1.5], \"fixed\": {\"deadline\": 10}"));
    EXPECT_THROW(eecrel::run_scenario(bad, RunKind::System), SchemaError);
}

TEST(RunScenario, ByteIdenticalAcrossRunsAndThreads) {
    const auto doc = parse(with_topology("ss"));
    eecrel::RunOverrides ov;
    ov.threads = 1;
    const auto a = eecrel::render(eecrel::run_scenario(doc, RunKind::Auto, ov));
    const auto b = eecrel::render(eecrel::run_scenario(doc, RunKind::Auto, ov));
    ov.threads = 6;
    const auto c = eecrel::render(eecrel::run_scenario(doc, RunKind::Auto, ov));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    ov.seed = 8;
    EXPECT_NE(a, eecrel::render(eecrel::run_scenario(doc, RunKind::Auto, ov)));
}

TEST(Validate, ReferenceDevicePasses) {
    const auto rows = eecrel::validate(parse(kTwoStage));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].pass);
    EXPECT_EQ(rows[0].simulated.n, eecrel::kDefaultSamples);
    EXPECT_NEAR(rows[0].closed_form, 0.758075087, 1e-9);
    EXPECT_NE(eecrel::render(rows).find(",PASS\n"), std::string::npos);
}

TEST(Validate, DoubledRateIsDetected) {
    const auto doc = parse(kTwoStage);
    const auto& dev = doc.devices[0];
    const auto corrupted = dev.with_rate(eecrel::ConstantRate{1.0, dev.capacity() / (2.0 * eecrel::mean_rate(dev))});
    const auto row = eecrel::check_device(corrupted, dev, 10.0, eecrel::McConfig::with_samples(1'000'000));
    EXPECT_FALSE(row.pass);
    EXPECT_GT(row.gap, row.bound);
    EXPECT_NE(eecrel::render(std::vector<eecrel::ValidationRow>{row}).find(",FAIL\n"), std::string::npos);
}

TEST(Validate, SystemsIncludeClosedForms) {
    for (const std::string top : {"parallel", "sns", "ss"}) {
        const auto rows = eecrel::validate(parse(with_topology(top)));
        // Two devices at four deadlines, plus the system where a closed form exists.
        EXPECT_EQ(rows.size(), top == "ss" ? 8u : 12u) << top;
        EXPECT_TRUE(eecrel::all_pass(rows)) << eecrel::render(rows);
    }
    const auto erlang = parse(R"({"schema_version": 1,
        "devices": [{"id": "e", "capacity_c": 1, "tail": {"kind": "exponential"}, "rate": {"kind": "constant", "u": 1, "d": 5}}],
        "system": {"topology": "ss", "devices": ["e", "e", "e"]},
        "sweep": {"variable": "deadline", "grid": [5, 10, 20]}, "mc": {"n_samples": 100000}})");
    const auto rows = eecrel::validate(erlang);
    EXPECT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[1].subject, "system:ss:erlang");
    EXPECT_TRUE(eecrel::all_pass(rows)) << eecrel::render(rows);
}

TEST(Figures, FigureOne) {
    const auto tables = eecrel::figure1();
    ASSERT_EQ(tables.size(), 2u);
    for (const auto& nt : tables) {
        EXPECT_EQ(nt.table.rows.size(), 501u);
        for (std::size_t c = 1; c < nt.table.header.size(); ++c) {
            const auto col = nt.table.column(nt.table.header[c]);
            EXPECT_TRUE(std::is_sorted(col.begin(), col.end())) << nt.table.header[c];
        }
    }
    EXPECT_NEAR(tables[0].table.rows[100][0], 1.0, 1e-15);
    EXPECT_NEAR(tables[0].table.column("exponential")[100], 0.8646647167633873, 1e-15);
    EXPECT_NEAR(tables[1].table.column("alpha=2")[100], 0.75, 1e-15);
}

TEST(Figures, FigureTwoTrends) {
    const auto tables = eecrel::figure2();
    ASSERT_EQ(tables.size(), 3u);
    for (std::size_t c = 1; c < tables[0].table.header.size(); ++c) {
        const auto u = tables[0].table.column(tables[0].table.header[c]);
        const auto dm = tables[1].table.column(tables[1].table.header[c]);
        const auto dr = tables[2].table.column(tables[2].table.header[c]);
        for (std::size_t i = 1; i < u.size(); ++i) {
            EXPECT_GT(u[i], u[i - 1]);
            EXPECT_LT(dm[i], dm[i - 1]);
            EXPECT_GE(dr[i], dr[i - 1]);
        }
    }
    EXPECT_EQ(tables[0].table.header[1], "t=5;xi=2");
}

TEST(Figures, WritesFilesAtomically) {
    TempDir dir;
    const auto paths = eecrel::write_tables(eecrel::figure1(), dir.path(), eecrel::TableFormat::Tsv);
    ASSERT_EQ(paths.size(), 2u);
    EXPECT_EQ(paths[0].filename(), "figure1a.tsv");
    EXPECT_TRUE(fs::exists(paths[1]));
    EXPECT_FALSE(fs::exists(dir.path() / "figure1a.tsv.tmp"));
    const auto text = eecrel::read_file(paths[0]);
    EXPECT_EQ(text.substr(0, 2), "x\t");
}

TEST(Figures, UnwritableTargetIsIoError) {
    TempDir dir;
    eecrel::write_file_atomic(dir.path() / "plain", "x");
    EXPECT_THROW(eecrel::write_file_atomic(dir.path() / "plain" / "child.csv", "x"), eecrel::IoError);
    EXPECT_THROW(eecrel::read_file(dir.path() / "missing.json"), eecrel::IoError);
}
