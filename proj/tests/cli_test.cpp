// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcorr/frontier.hpp"
#include "qcorr/io.hpp"
#include "qcorr_cli/cli.hpp"

namespace qcorr {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qcorr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

TEST_F(Cli, MeasureBellState) {
    write_text_file(path("bell.json"), state_to_json(bell_phi(0.5)));
    const Result r = run({"measure", "--state", path("bell.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"D_sym\": 1.0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"A\": 1.0"), std::string::npos);
    EXPECT_NE(r.out.find("\"S\": 0.0"), std::string::npos);
}

TEST_F(Cli, FamilyThenMeasureMaximallyMixed) {
    ASSERT_EQ(run({"family", "werner", "--eps", "1", "--out", path("mm.json")}).code, 0);
    const Result r = run({"measure", "--state", path("mm.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char *key : {"\"I\": 0.0", "\"D_left\": 0.0", "\"D_right\": 0.0", "\"D_sym\": 0.0", "\"I_c\": 0.0",
                            "\"A\": 0.0", "\"S\": 2.0"}) {
        EXPECT_NE(r.out.find(key), std::string::npos) << key << "\n" << r.out;
    }
}

TEST_F(Cli, EmittedStatesRoundTripThroughMeasure) {
    const std::vector<std::vector<std::string>> commands = {
        {"family", "rho_up", "--eps", "0.1", "--p", "0.8"},
        {"family", "mems_ree", "--a", "0.2", "--r", "0.5"},
        {"source", "--recipe", "werner", "--eps", "0.4", "--C", "7"},
        {"source", "--recipe", "down", "--C", "1.2"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto args = commands[i];
        args.push_back("--out");
        args.push_back(path("s" + std::to_string(i) + ".json"));
        ASSERT_EQ(run(args).code, 0);
        const Result m = run({"measure", "--discord-only", "--state", path("s" + std::to_string(i) + ".json")});
        EXPECT_EQ(m.code, 0) << m.err;
    }
}

TEST_F(Cli, HelpForEverySubcommand) {
    for (const char *sub : {"measure", "family", "sweep", "scatter", "source", "tomo-sim", "tomo-fit", "spread"}) {
        const Result r = run({sub, "--help"});
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
    }
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, UsageErrorsExitTwoWithoutWriting) {
    const std::string out = path("never.json");
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"bogus"},
        {"measure", "--state", "x.json", "--frobnicate", "--out", out},
        {"family", "werner", "--eps", "2", "--out", out},
        {"family", "werner", "--p", "0.5", "--out", out},
        {"family", "ghz", "--out", out},
        {"scatter", "--n", "3", "--out", out},
        {"tomo-sim", "--state", "x.json", "--n", "100", "--out", out},
        {"sweep", "--plane", "mncms", "--bins", "4", "--out", out},
        {"sweep", "--family", "werner", "--vary", "p", "--out", out},
        {"source", "--recipe", "down", "--eps", "0.2", "--out", out},
        {"spread", "--table-point", "9", "--seed", "1", "--out", out},
        {"scatter", "--n", "2", "--seed", "1", "--jobs", "-1", "--out", out},
    };
    for (const auto &args : bad) {
        const Result r = run(args);
        EXPECT_EQ(r.code, 2) << ::testing::PrintToString(args) << "\n" << r.err;
        EXPECT_FALSE(fs::exists(out)) << ::testing::PrintToString(args);
    }
}

TEST_F(Cli, UnwritableOutputIsUsageError) {
    write_text_file(path("bell.json"), state_to_json(bell_phi(0.5)));
    const Result r = run({"measure", "--state", path("bell.json"), "--out", path("missing/dir/r.json")});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, MalformedStateFileIsComputationError) {
    ComplexMatrix m = maximally_mixed().matrix();
    m(1, 1) = 0.5;
    write_text_file(path("bad.json"), matrix_to_json(m));
    const Result r = run({"measure", "--state", path("bad.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("trace"), std::string::npos) << r.err;
    EXPECT_EQ(run({"measure", "--state", path("absent.json")}).code, 1);
    write_text_file(path("junk.json"), "not json");
    EXPECT_EQ(run({"measure", "--state", path("junk.json")}).code, 1);
}

TEST_F(Cli, ScatterIsByteIdenticalAcrossRunsAndJobs) {
    const Result a = run({"scatter", "--n", "4", "--seed", "7", "--jobs", "1"});
    const Result b = run({"scatter", "--n", "4", "--seed", "7", "--jobs", "3"});
    const Result c = run({"scatter", "--n", "4", "--seed", "7", "--jobs", "1"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 5);
}

TEST_F(Cli, SweepFamilyCsv) {
    const Result r = run({"sweep", "--family", "rho_up", "--vary", "eps", "--p", "0.8", "--points", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "family,eps,p,S,D_left,D_right,D_sym,I_c,A");
    EXPECT_NE(r.out.find("\nrho_up,0.5,0.8,"), std::string::npos);
    const Result j = run({"sweep", "--family", "werner", "--points", "2", "--format", "json"});
    EXPECT_EQ(j.out.front(), '[');
}

TEST_F(Cli, TomographyPipeline) {
    write_text_file(path("w.json"), state_to_json(werner(0.3)));
    ASSERT_EQ(run({"tomo-sim", "--state", path("w.json"), "--n", "10000", "--seed", "4", "--out", path("d.json")}).code,
              0);
    const Result again = run({"tomo-sim", "--state", path("w.json"), "--n", "10000", "--seed", "4"});
    EXPECT_EQ(again.out, read_text_file(path("d.json")));
    const Result fit = run({"tomo-fit", "--data", path("d.json"), "--reference", path("w.json")});
    ASSERT_EQ(fit.code, 0) << fit.err;
    EXPECT_NE(fit.out.find("\"fidelity_vs_reference\": 0.99"), std::string::npos) << fit.out;
}

TEST_F(Cli, SourceConfigFile) {
    ASSERT_EQ(run({"source", "--recipe", "up", "--eps", "0.05", "--p", "0.7", "--print-config", "--out",
                   path("c.json")})
                  .code,
              0);
    const Result viaFile = run({"source", "--config", path("c.json")});
    const Result viaFlags = run({"source", "--recipe", "up", "--eps", "0.05", "--p", "0.7"});
    ASSERT_EQ(viaFile.code, 0) << viaFile.err;
    EXPECT_EQ(viaFile.out, viaFlags.out);
    EXPECT_EQ(run({"source", "--config", path("c.json"), "--eps", "0.1"}).code, 2);
}

TEST_F(Cli, SpreadForExperimentalPoint) {
    const Result r = run({"spread", "--table-point", "3", "--n", "20", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"eps\": 0.1"), std::string::npos);
    EXPECT_NE(r.out.find("\"std\""), std::string::npos);
}

TEST_F(Cli, MncmsPlaneMatchesLowEntropyFamily) {
    const Result r = run({"sweep", "--plane", "mncms", "--bins", "40", "--seed", "1", "--out", path("frontier.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(read_text_file(path("frontier.csv")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("bin_lower,bin_upper,present,S,D_sym", 0), 0u);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (std::stod(cells[0]) >= 0.9 || cells[2] != "1") {
            continue;
        }
        const double s = std::stod(cells[3]);
        const double d = std::stod(cells[4]);
        const auto ref = mems_ree_best_at_entropy(s);
        if (ref) {
            EXPECT_NEAR(d, ref->D_sym, 5e-3) << line;
        }
    }
    EXPECT_EQ(rows, 40);
}

}  // namespace
}  // namespace qcorr
