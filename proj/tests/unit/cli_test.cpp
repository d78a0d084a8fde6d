// Copyright 2026 The qdyn Authors
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
#include <string>
#include <vector>

#include "cli.hpp"
#include "qdyn/frenkel.hpp"
#include "qdyn/series_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qdyn::cli::cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qdyn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kDimer = R"({
  "model": {"type": "frenkel", "energies": [0.01, -0.01],
            "couplings": [[0, 0.04], [0.04, 0]], "initial_site": 1},
  "total_time": 20,
  "exact": {"output_dt": 1.0},
  "vqa": {"dt": 0.5, "ansatz": "default"},
  "trotter": {"dt": 0.5}
})";

}  // namespace

TEST_F(CliTest, EncodePrintsHamiltonian) {
  auto r = run_cli({"encode", "--config", std::string(QDYN_CONFIG_DIR) + "/frenkel_4site.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# offset_eV 0"), std::string::npos);
  EXPECT_NE(r.out.find("IZ"), std::string::npos);
  EXPECT_NE(r.out.find("XX"), std::string::npos);
}

TEST_F(CliTest, EncodeFromTrajectory) {
  auto t = write("traj.csv", "t_fs,E_1,E_2,V_1_2\n0,0.1,0.3,0.05\n2,0.3,0.1,0.05\n");
  auto r = run_cli({"encode", "--trajectory", t, "--time", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# offset_eV 0.2"), std::string::npos);
  EXPECT_NE(r.out.find(" X"), std::string::npos);
}

TEST_F(CliTest, EvolveAllMethods) {
  auto cfg = write("dimer.json", kDimer);
  for (const std::string m : {"exact", "vqa", "trotter"}) {
    auto r = run_cli({"evolve", "--config", cfg, "--method", m, "--out", path(m)});
    ASSERT_EQ(r.code, 0) << m << ": " << r.err;
    auto s = qdyn::read_series_csv(path(m) + "/populations.csv");
    EXPECT_NEAR(s.times.back(), 20.0, 1e-9);
    EXPECT_NEAR(s.populations.front()(0), 1.0, 1e-12);
    EXPECT_TRUE(fs::exists(path(m) + "/resolved_config.json"));
  }
  EXPECT_TRUE(fs::exists(path("vqa") + "/theta.csv"));
  // Methods agree with each other loosely on this small model.
  auto ex = qdyn::read_series_csv(path("exact") + "/populations.csv");
  auto vq = qdyn::read_series_csv(path("vqa") + "/populations.csv");
  EXPECT_NEAR(ex.populations.back()(0), qdyn::interpolate_linear(vq.times, vq.site(0), 20.0), 0.05);
}

TEST_F(CliTest, ResolvedConfigRecordsOverrides) {
  auto cfg = write("dimer.json", kDimer);
  auto r = run_cli({"evolve", "--config", cfg, "--method", "trotter", "--out", path("o"),
                    "--lambda", "0.01", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("o") + "/resolved_config.json");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("\"noisy\": true"), std::string::npos);
  EXPECT_NE(text.find("\"seed\": 5"), std::string::npos);
}

TEST_F(CliTest, MitigateWritesOutputs) {
  auto cfg = write("dimer.json", kDimer);
  std::string body(kDimer);
  body.replace(body.find("\"total_time\": 20"), 16, "\"total_time\": 60");
  auto long_cfg = write("long.json", body);
  ASSERT_EQ(run_cli({"evolve", "--config", long_cfg, "--method", "vqa", "--out", path("v")}).code, 0);
  ASSERT_EQ(run_cli({"evolve", "--config", cfg, "--method", "exact", "--out", path("t")}).code, 0);
  auto r = run_cli({"mitigate", "--vqa", path("v") + "/populations.csv", "--trotter",
                    path("t") + "/populations.csv", "--t-cutoff", "10", "--alpha-range", "0.5,2",
                    "--out", path("m")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("m") + "/corrected.csv"));
  std::ifstream in(path("m") + "/mitigation.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "window_start_fs,alpha,objective");
}

TEST_F(CliTest, SynthAndEnsemble) {
  auto cfg = write("ens.json", R"({
    "model": {"type": "frenkel", "energies": [0.01, -0.01],
              "couplings": [[0, 0.04], [0.04, 0]]},
    "total_time": 10,
    "exact": {"output_dt": 1.0, "micro_dt": 0.05},
    "synthesis": {"energy_stddev": 0.01, "correlation_time": 5, "dt": 1, "duration": 10},
    "ensemble": {"count": 6, "base_seed": 3, "threads": 2,
                 "synthesis": {"energy_stddev": 0.01, "correlation_time": 5, "dt": 1}}
  })");
  auto r = run_cli({"synth-traj", "--config", cfg, "--out", path("s"), "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto traj = qdyn::read_trajectory_csv(path("s") + "/trajectory.csv");
  EXPECT_EQ(traj.times.size(), 11u);

  ASSERT_EQ(run_cli({"ensemble", "--config", cfg, "--out", path("e1")}).code, 0);
  ASSERT_EQ(run_cli({"ensemble", "--config", cfg, "--out", path("e2")}).code, 0);
  auto a = qdyn::read_series_csv(path("e1") + "/ensemble_mean.csv");
  auto b = qdyn::read_series_csv(path("e2") + "/ensemble_mean.csv");
  ASSERT_TRUE(a.ipr_member_mean.has_value());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.populations[i], b.populations[i]);
    EXPECT_NEAR(a.populations[i].sum(), 1.0, 1e-8);
    EXPECT_GE(a.populations[i].minCoeff(), 0.0);
    EXPECT_LE(a.populations[i].maxCoeff(), 1.0);
  }
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  EXPECT_EQ(run_cli({"evolve", "--config", path("missing.json")}).code, 1);
  auto bad = write("bad.json", "{ not json");
  EXPECT_EQ(run_cli({"evolve", "--config", bad}).code, 1);
  auto cfg = write("dimer.json", kDimer);
  EXPECT_EQ(run_cli({"evolve", "--config", cfg, "--method", "magic"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  auto neg = write("neg.json", R"({"model": {"type": "frenkel", "energies": [0, 0],
      "couplings": [[0, 0.1], [0.2, 0]]}})");
  auto r = run_cli({"evolve", "--config", neg, "--out", path("x")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, NumericalFailureExitsTwo) {
  write("traj.csv", "t_fs,E_1,E_2,V_1_2\n0,0.1,-0.3,0.05\n5,-0.3,0.1,0.2\n10,0.2,0.0,0.01\n");
  auto cfg = write("td.json", R"({
    "model": {"type": "frenkel_trajectory", "trajectory": "traj.csv"},
    "total_time": 10,
    "exact": {"micro_dt": 1.0, "tolerance": 0.0}
  })");
  auto r = run_cli({"evolve", "--config", cfg, "--method", "exact", "--out", path("o")});
  EXPECT_EQ(r.code, 2) << r.err;
}
