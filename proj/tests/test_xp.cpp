// Copyright 2026 The sqmgnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests of the sqmgnn command-line tool. Each test runs the built
// binary in a scratch directory and inspects its files and exit status.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/d2d/dataset.hpp"
#include "sqm/io.hpp"
#include "sqm/models/checkpoint.hpp"
#include "sqm/train/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sqm;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("sqmgnn_xp_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        if (!HasFailure()) {
            fs::remove_all(dir_);
        }
    }

    RunResult run(const std::string &args, const std::string &env = "") const {
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd = env + " \"" SQMGNN_CLI_PATH "\" " + args + " 2>\"" + err.string() + "\"";
        FILE *pipe = popen(cmd.c_str(), "r");
        EXPECT_NE(pipe, nullptr);
        std::string out;
        char buf[4096];
        while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
            out.append(buf, n);
        }
        const int status = pclose(pipe);
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, io::read_file(err)};
    }

    std::string p(const std::string &rel) const { return (dir_ / rel).string(); }

    static std::vector<std::vector<std::string>> csv(const fs::path &f) {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(io::read_file(f));
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) {
                cells.push_back(cell);
            }
            if (!line.empty() && line.back() == ',') {
                cells.emplace_back();
            }
            rows.push_back(cells);
        }
        return rows;
    }

    void generate_small(const std::string &out, std::size_t count = 12, std::size_t K = 4) const {
        const auto r = run("-q generate --count " + std::to_string(count) + " --K " + std::to_string(K) +
                           " --out " + p(out));
        ASSERT_EQ(r.code, 0) << r.err;
    }

    fs::path dir_;
};

constexpr const char *kTinyTrain = " --epochs 2 --batch 4 --k 3 --depth 1 --seeds 1,2 ";

TEST_F(CliTest, QubitBudgetKnownValues) {
    const auto r = run("qubit-budget --K-list 4,8,10,20 --k 6 --budget 70 --out " + p("qb"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::read_file(dir_ / "qb" / "qubit_budget.csv"),
              "K,qsgcn_qubits,sqm_qubits,budget,usable,qsgcn_feasible,sqm_feasible\n"
              "4,10,13,70,52,yes,yes\n"
              "8,36,13,70,52,yes,yes\n"
              "10,55,13,70,52,no,yes\n"
              "20,210,13,70,52,no,yes\n");
    EXPECT_NE(r.out.find("210"), std::string::npos);
}

TEST_F(CliTest, QubitBudgetDefaultsMatchFlags) {
    const auto a = run("-q qubit-budget --out " + p("a"));
    const auto b = run("-q qubit-budget --K-list 4,8,10,20 --k 6 --budget 70 --out " + p("b"));
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(io::read_file(dir_ / "a" / "qubit_budget.csv"), io::read_file(dir_ / "b" / "qubit_budget.csv"));
}

TEST_F(CliTest, QubitBudgetFullFractionIsPlainComparison) {
    const auto r = run("-q qubit-budget --K-list 10,11,12 --usable-fraction 1 --out " + p("qb"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(dir_ / "qb" / "qubit_budget.csv");
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1][5], "yes");
    EXPECT_EQ(rows[2][5], "yes");
    EXPECT_EQ(rows[3][1], "78");
    EXPECT_EQ(rows[3][5], "no");
    EXPECT_EQ(run("qubit-budget --usable-fraction 0 --out " + p("z")).code, 2);
}

TEST_F(CliTest, GenerateSmokeAndByteIdenticalRerun) {
    generate_small("d1", 25, 4);
    generate_small("d2", 25, 4);
    for (const char *f : {"train.json", "train.bin", "test.json", "test.bin", "config.json"}) {
        EXPECT_EQ(io::read_file(dir_ / "d1" / f), io::read_file(dir_ / "d2" / f)) << f;
    }
    const auto tr = d2d::load_dataset(dir_ / "d1" / "train.json");
    const auto te = d2d::load_dataset(dir_ / "d1" / "test.json");
    EXPECT_EQ(tr.realizations.size(), 25u);
    EXPECT_EQ(te.config.K, 4u);
    EXPECT_NE(tr.realizations[0].H, te.realizations[0].H);
}

TEST_F(CliTest, GenerateSeedChangesData) {
    ASSERT_EQ(run("-q generate --count 3 --K 3 --seed 1 --out " + p("a")).code, 0);
    ASSERT_EQ(run("-q generate --count 3 --K 3 --seed 2 --out " + p("b")).code, 0);
    EXPECT_NE(io::read_file(dir_ / "a" / "train.bin"), io::read_file(dir_ / "b" / "train.bin"));
}

TEST_F(CliTest, RunDirEnvironmentSetsDefaultOutput) {
    const auto r = run("-q generate --count 3 --K 3", "SQMGNN_RUN_DIR=\"" + p("envrun") + "\"");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "envrun" / "data" / "train.json"));
    EXPECT_TRUE(fs::exists(dir_ / "envrun" / "data" / "config.json"));
}

TEST_F(CliTest, ConfigEchoReproducesRun) {
    ASSERT_EQ(run("-q generate --count 7 --K 5 --seed 33 --p-max 2 --out " + p("a")).code, 0);
    const auto r = run("-q generate --config " + p("a/config.json") + " --out " + p("b"));
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char *f : {"train.json", "train.bin", "test.json", "test.bin", "config.json"}) {
        EXPECT_EQ(io::read_file(dir_ / "a" / f), io::read_file(dir_ / "b" / f)) << f;
    }
    const auto cfg = io::read_json(dir_ / "a" / "config.json");
    EXPECT_EQ(cfg["scenario"]["K"], 5);
    EXPECT_EQ(cfg["scenario"]["p_max_w"], 2.0);
    EXPECT_TRUE(cfg.contains("train"));
    EXPECT_TRUE(cfg.contains("sqm"));
    EXPECT_TRUE(cfg.contains("gnn"));
}

TEST_F(CliTest, ShippedConfigIsTheDefault) {
    const fs::path shipped = fs::path(SQMGNN_SOURCE_DIR) / "configs" / "default.json";
    ASSERT_EQ(run("-q generate --config \"" + shipped.string() + "\" --count 2 --out " + p("a")).code, 0);
    ASSERT_EQ(run("-q generate --count 2 --out " + p("b")).code, 0);
    EXPECT_EQ(io::read_file(dir_ / "a" / "config.json"), io::read_file(dir_ / "b" / "config.json"));
    EXPECT_EQ(io::read_file(dir_ / "a" / "train.bin"), io::read_file(dir_ / "b" / "train.bin"));
}

TEST_F(CliTest, TrainSqmSmokeEmitsAllArtifacts) {
    generate_small("data");
    const auto r = run("-q train --model sqm --data " + p("data") + " --out " + p("sqm") + kTinyTrain);
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char *f : {"config.json", "report.json", "curves.csv", "checkpoints/seed_1.json",
                          "checkpoints/seed_1.bin", "checkpoints/seed_2.json"}) {
        EXPECT_TRUE(fs::exists(dir_ / "sqm" / f)) << f;
    }
    const auto rows = csv(dir_ / "sqm" / "curves.csv");
    ASSERT_EQ(rows.size(), 1u + 2 * 2);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"seed", "epoch", "train_sr", "test_sr", "ratio"}));
    std::map<std::string, int> per_seed;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ++per_seed[rows[i][0]];
    }
    EXPECT_EQ(per_seed["1"], 2);
    EXPECT_EQ(per_seed["2"], 2);
    const auto rep = io::read_json(dir_ / "sqm" / "report.json");
    EXPECT_EQ(rep["model"], "sqm");
    const auto pol = models::load_checkpoint(dir_ / "sqm" / "checkpoints" / "seed_2.json");
    EXPECT_EQ(models::policy_kind(pol), "sqm");
}

TEST_F(CliTest, TrainGnnSmokeAndRerunIsByteIdentical) {
    generate_small("data");
    const std::string args = "-q train --model gnn --data " + p("data") + kTinyTrain;
    ASSERT_EQ(run(args + " --out " + p("g1")).code, 0);
    ASSERT_EQ(run(args + " --out " + p("g2")).code, 0);
    for (const char *f : {"report.json", "curves.csv", "checkpoints/seed_1.bin", "checkpoints/seed_2.json"}) {
        EXPECT_EQ(io::read_file(dir_ / "g1" / f), io::read_file(dir_ / "g2" / f)) << f;
    }
    EXPECT_EQ(csv(dir_ / "g1" / "curves.csv").size(), 5u);
}

TEST_F(CliTest, TrainWithoutDataFailsWithIoCategory) {
    const auto r = run("-q train --model sqm --epochs 1 --data " + p("nothing") + " --out " + p("o"));
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.err.rfind("error: io: ", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, EvalWithOracleCheckpointIsHundredPercent) {
    generate_small("data", 10, 5);
    models::save_checkpoint(models::WmmseOracle{}, dir_ / "oracle.json");
    const auto r = run("eval --checkpoint " + p("oracle.json") + " --data " + p("data/test.json") + " --out " +
                       p("ev"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(dir_ / "ev" / "eval.csv");
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"model", "K", "p_max", "sum_rate", "ratio"}));
    EXPECT_EQ(rows[1][0], "wmmse");
    EXPECT_EQ(rows[1][1], "5");
    EXPECT_EQ(std::stod(rows[1][4]), 100.0);
    EXPECT_EQ(rows[1][3], rows[2][3]);
    EXPECT_EQ(rows[3][0], "max_power");
    EXPECT_EQ(rows[4][0], "random_power");
    EXPECT_LT(std::stod(rows[3][4]), 100.0);
    EXPECT_NE(r.out.find("100.00"), std::string::npos);
}

TEST_F(CliTest, EvalAtOtherKWarnsAndSucceeds) {
    generate_small("d4", 8, 4);
    generate_small("d6", 8, 6);
    ASSERT_EQ(run("-q train --model sqm --data " + p("d4") + " --out " + p("m") + kTinyTrain).code, 0);
    const auto r = run("eval --checkpoint " + p("m/checkpoints/seed_1.json") + " --data " + p("d6/test.json") +
                       " --out " + p("ev"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("warning: evaluating at K=6"), std::string::npos) << r.out;
    const auto rows = csv(dir_ / "ev" / "eval.csv");
    EXPECT_EQ(rows[1][0], "sqm");
    EXPECT_EQ(rows[1][1], "6");
    EXPECT_TRUE(std::isfinite(std::stod(rows[1][4])));
}

TEST_F(CliTest, SingleCellSweepEqualsEval) {
    generate_small("data");
    ASSERT_EQ(run("-q train --model sqm --data " + p("data") + " --out " + p("m") + kTinyTrain).code, 0);
    const std::string cp = p("m/checkpoints/seed_1.json");
    auto r = run("-q sweep --checkpoint " + cp + " --K-list 5 --p-max-list 2 --count 9 --sweep-seed 99 --out " +
                 p("sw"));
    ASSERT_EQ(r.code, 0) << r.err;

    const auto cfg = io::read_json(dir_ / "sw" / "config.json");
    d2d::ScenarioConfig base = d2d::scenario_from_json(cfg["scenario"]);
    const auto ds = train::cell_dataset(base, {5, 2.0}, 9, 99);
    d2d::save_dataset(ds, dir_ / "cell.json");
    r = run("-q eval --checkpoint " + cp + " --data " + p("cell.json") + " --out " + p("ev") + " --eval-seed " +
            std::to_string(cfg["train"]["eval_seed"].get<std::uint64_t>()));
    ASSERT_EQ(r.code, 0) << r.err;

    const auto sw = csv(dir_ / "sw" / "sweep.csv");
    const auto ev = csv(dir_ / "ev" / "eval.csv");
    ASSERT_EQ(sw.size(), 2u);
    EXPECT_EQ(sw[0], (std::vector<std::string>{"model", "K", "p_max", "sum_rate", "ratio", "wmmse_sum_rate"}));
    EXPECT_EQ(sw[1][0], ev[1][0]);
    EXPECT_EQ(sw[1][1], ev[1][1]);
    EXPECT_EQ(sw[1][2], ev[1][2]);
    EXPECT_EQ(sw[1][3], ev[1][3]);
    EXPECT_EQ(sw[1][4], ev[1][4]);
    EXPECT_EQ(sw[1][5], ev[2][3]);
}

TEST_F(CliTest, SweepGridShapeAndDeterminism) {
    models::save_checkpoint(models::MaxPowerPolicy{}, dir_ / "mp.json");
    models::save_checkpoint(models::WmmseOracle{}, dir_ / "or.json");
    const std::string args = "-q sweep --checkpoint " + p("mp.json") + " --checkpoint " + p("or.json") +
                             " --checkpoint " + p("mp.json") + " --K-list 3,4 --p-max-list 1,2 --count 4";
    ASSERT_EQ(run(args + " --out " + p("s1")).code, 0);
    ASSERT_EQ(run(args + " --out " + p("s2")).code, 0);
    EXPECT_EQ(io::read_file(dir_ / "s1" / "sweep.csv"), io::read_file(dir_ / "s2" / "sweep.csv"));
    const auto rows = csv(dir_ / "s1" / "sweep.csv");
    ASSERT_EQ(rows.size(), 1u + 3 * 4);
    std::set<std::string> names;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        names.insert(rows[i][0]);
        EXPECT_TRUE(std::isfinite(std::stod(rows[i][4])));
        if (rows[i][0] == "wmmse") {
            EXPECT_EQ(std::stod(rows[i][4]), 100.0);
        }
    }
    EXPECT_EQ(names, (std::set<std::string>{"max_power", "max_power_1", "wmmse"}));
}

TEST_F(CliTest, PlotDataMergesReports) {
    generate_small("data");
    ASSERT_EQ(run("-q train --model sqm --data " + p("data") + " --out " + p("sqm") + kTinyTrain).code, 0);
    ASSERT_EQ(run("-q train --model gnn --data " + p("data") + " --out " + p("gnn") + kTinyTrain).code, 0);
    const auto r = run("-q plot-data --report " + p("sqm/report.json") + " --report " + p("gnn/report.json") +
                       " --out " + p("plot"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv(dir_ / "plot" / "plot.csv");
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"epoch", "sqm_train_mean", "sqm_train_std", "sqm_test_mean",
                                                 "sqm_test_std", "gnn_train_mean", "gnn_train_std",
                                                 "gnn_test_mean", "gnn_test_std", "wmmse_test"}));
    for (std::size_t e = 1; e < rows.size(); ++e) {
        ASSERT_EQ(rows[e].size(), 10u);
        EXPECT_EQ(rows[e][0], std::to_string(e));
        EXPECT_EQ(rows[e][9], rows[1][9]);
        EXPECT_GT(std::stod(rows[e][9]), 0.0);
    }
}

TEST_F(CliTest, PlotDataSingleSeedHasZeroStd) {
    generate_small("data");
    ASSERT_EQ(run("-q train --model gnn --epochs 2 --batch 4 --seeds 3 --data " + p("data") + " --out " + p("g"))
                  .code,
              0);
    ASSERT_EQ(run("-q plot-data --report " + p("g/report.json") + " --out " + p("plot")).code, 0);
    const auto rows = csv(dir_ / "plot" / "plot.csv");
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t e = 1; e < rows.size(); ++e) {
        EXPECT_EQ(std::stod(rows[e][2]), 0.0);
        EXPECT_EQ(std::stod(rows[e][4]), 0.0);
    }
}

TEST_F(CliTest, MalformedReportIsDataError) {
    io::write_file(dir_ / "bad.json", "{\"format\": \"nope\"}");
    const auto r = run("plot-data --report " + p("bad.json") + " --out " + p("plot"));
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.err.rfind("error: data: ", 0), 0u) << r.err;
}

TEST_F(CliTest, UsageAndContractErrors) {
    auto r = run("generate --bogus 1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error: usage: ", 0), 0u) << r.err;

    r = run("");
    EXPECT_EQ(r.code, 2);

    r = run("generate --K 0 --count 2 --out " + p("z"));
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error: contract: ", 0), 0u) << r.err;

    r = run("qubit-budget --K-list 0 --out " + p("z"));
    EXPECT_EQ(r.code, 2);

    r = run("train --model mlp");
    EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UnknownConfigKeyIsDataError) {
    io::write_file(dir_ / "c.json", "{\"scenario\": {}, \"colour\": 1}");
    const auto r = run("generate --config " + p("c.json") + " --out " + p("z"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("colour"), std::string::npos);
}

TEST_F(CliTest, CorruptCheckpointIsDataError) {
    generate_small("data", 4, 3);
    io::write_file(dir_ / "cp.json", "{\"format\": \"sqmgnn.checkpoint.v1\", \"kind\": \"sqm\"}");
    const auto r = run("eval --checkpoint " + p("cp.json") + " --data " + p("data/test.json") + " --out " + p("e"));
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.err.rfind("error: data: ", 0), 0u) << r.err;
}

TEST_F(CliTest, VersionFlag) {
    const auto r = run("--version");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sqmgnn"), std::string::npos);
}

} // namespace
