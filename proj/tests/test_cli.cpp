// Copyright 2026 The tqgm Authors
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

// Drives the installed command-line tool through a small end-to-end run.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kTool = TQGM_CLI_PATH;

int run(const std::string &args) {
    const std::string cmd = kTool.string() + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / "tqgm_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string p(const std::string &name) const {
        return (dir / name).string();
    }
    fs::path dir;
};

} // namespace

TEST_F(Cli, PipelineRuns) {
    ASSERT_EQ(run("synth --out-dir " + p("raw")), 0);
    ASSERT_EQ(run("ingest --csv-a " + p("raw/synth_A.csv") + " --csv-b " +
                  p("raw/synth_B.csv") + " --out " + p("ds.csv")),
              0);
    ASSERT_EQ(run("train --dataset " + p("ds.csv") +
                  " --year 2016 --task forecast --layers 1 --steps 3 "
                  "--seeds 2 --ancilla 1 --out " +
                  p("m")),
              0);
    ASSERT_TRUE(fs::exists(dir / "m" / "L1_seed0.json"));
    ASSERT_EQ(run("evaluate --model-dir " + p("m") + " --max-lags 5 --out " +
                  p("r.json")),
              0);
    std::ifstream in(dir / "r.json");
    const auto report = nlohmann::json::parse(in);
    EXPECT_EQ(report.at("models")[0].at("seeds").size(), 2u);
    EXPECT_EQ(report.at("baselines").size(), 2u);

    ASSERT_EQ(run("entropy --model-dir " + p("m") + " --steps 5 --out " +
                  p("e.csv")),
              0);
    std::ifstream e(dir / "e.csv");
    std::string header;
    std::getline(e, header);
    EXPECT_EQ(header, "seed,t,entropy_bits,max_bits");

    EXPECT_EQ(run("plot --report " + p("r.json") + " --out " + p("plots")), 0);
    EXPECT_TRUE(fs::exists(dir / "plots" / "cumulative_d1.csv"));
    EXPECT_EQ(run("baseline --dataset " + p("ds.csv") +
                  " --year 2016 --method naive"),
              0);
}

TEST_F(Cli, SeedOffsetFromEnvironment) {
    ASSERT_EQ(run("synth --out-dir " + p("raw")), 0);
    ASSERT_EQ(run("ingest --csv-a " + p("raw/synth_A.csv") + " --csv-b " +
                  p("raw/synth_B.csv") + " --out " + p("ds.csv")),
              0);
    const std::string cmd = "TQGM_SEED_OFFSET=40 " + kTool.string() +
                            " train --dataset " + p("ds.csv") +
                            " --year 2017 --task impute --layers 1,3 "
                            "--steps 1 --seeds 2 --ancilla 0 --out " +
                            p("m") + " > /dev/null 2>&1";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(dir / "m" / "L1_seed40.json"));
    EXPECT_TRUE(fs::exists(dir / "m" / "L3_seed41.json"));
}

TEST_F(Cli, HardErrorsExitOne) {
    EXPECT_EQ(run("ingest --csv-a " + p("missing.csv") + " --csv-b " +
                  p("missing.csv") + " --out " + p("x.csv")),
              1);
    EXPECT_EQ(run("train --dataset x"), 1);
    EXPECT_EQ(run("bogus"), 1);
}
