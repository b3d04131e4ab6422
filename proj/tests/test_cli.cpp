// Copyright 2026 The mstl Authors.
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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kTinyConfig = R"({
  "dataset": {"type": "synthetic", "num_sources": 2, "dim": 3,
               "proximity": [0.2, 0.8], "per_source_pos": 8,
               "per_source_neg": 8, "target_test_size": 12},
  "labeled_fractions": [0.25, 0.5],
  "methods": ["KMM_best", "PW_MSTL"],
  "strategies": ["Random"],
  "trials": 2,
  "master_seed": 5
})";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mstl_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(MSTL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_config(const TempDir& dir, const char* text) {
  const fs::path p = dir.path / "config.json";
  std::ofstream out(p);
  out << text;
  return p.string();
}

}  // namespace

TEST_CASE("missing config file exits with code 1") {
  TempDir dir("missing");
  CHECK(run_cli("transfer --config /nonexistent/x.json --out " +
                (dir.path / "out").string()) == 1);
}

TEST_CASE("unknown flags exit with code 1") {
  TempDir dir("flags");
  const auto cfg = write_config(dir, kTinyConfig);
  CHECK(run_cli("transfer --config " + cfg + " --out " +
                (dir.path / "out").string() + " --frobnicate") == 1);
  CHECK(run_cli("wat --config " + cfg) == 1);
}

TEST_CASE("config with unknown keys exits with code 1") {
  TempDir dir("badkey");
  const auto cfg = write_config(dir, R"({"dataset":{"type":"synthetic"},"oops":1})");
  CHECK(run_cli("transfer --config " + cfg + " --out " +
                (dir.path / "out").string()) == 1);
}

TEST_CASE("transfer writes the expected files") {
  TempDir dir("transfer");
  const auto cfg = write_config(dir, kTinyConfig);
  const auto out = (dir.path / "out").string();
  CHECK(run_cli("transfer --config " + cfg + " --out " + out + " --quiet --jobs 1") == 0);
  CHECK(fs::exists(fs::path(out) / "run_meta.json"));
  CHECK(fs::exists(fs::path(out) / "transfer_summary.csv"));
  CHECK(fs::exists(fs::path(out) / "transfer_trials.csv"));
  CHECK(fs::exists(fs::path(out) / "transfer_pvalues.csv"));
  const auto meta = read_file(fs::path(out) / "run_meta.json");
  CHECK(meta.find("\"command\": \"transfer\"") != std::string::npos);
}

TEST_CASE("synth runs are byte-identical under the same seed") {
  TempDir dir("synth");
  const auto cfg = write_config(dir, kTinyConfig);
  const auto out1 = (dir.path / "a").string();
  const auto out2 = (dir.path / "b").string();
  CHECK(run_cli("synth --config " + cfg + " --out " + out1 + " --seed 42 --quiet") == 0);
  CHECK(run_cli("synth --config " + cfg + " --out " + out2 + " --seed 42 --quiet") == 0);
  for (const char* name : {"source1.csv", "source2.csv", "target.csv",
                           "run_meta.json"}) {
    CHECK(read_file(fs::path(out1) / name) == read_file(fs::path(out2) / name));
    CHECK(!read_file(fs::path(out1) / name).empty());
  }
  // A different seed changes the data.
  const auto out3 = (dir.path / "c").string();
  CHECK(run_cli("synth --config " + cfg + " --out " + out3 + " --seed 43 --quiet") == 0);
  CHECK(read_file(fs::path(out1) / "target.csv") !=
        read_file(fs::path(out3) / "target.csv"));
}

TEST_CASE("seed override is echoed in run_meta") {
  TempDir dir("seed");
  const auto cfg = write_config(dir, kTinyConfig);
  const auto out = (dir.path / "out").string();
  CHECK(run_cli("kmm-audit --config " + cfg + " --out " + out + " --seed 77 --quiet") == 0);
  const auto meta = read_file(fs::path(out) / "run_meta.json");
  CHECK(meta.find("\"master_seed\": 77") != std::string::npos);
  CHECK(meta.find("\"seed_override\": true") != std::string::npos);
  CHECK(fs::exists(fs::path(out) / "kmm_summary.csv"));
  CHECK(fs::exists(fs::path(out) / "alpha_source_1.csv"));
  CHECK(fs::exists(fs::path(out) / "alpha_source_2.csv"));
}

TEST_CASE("sweep-mu and active write their tables") {
  TempDir dir("sweep");
  const auto cfg = write_config(dir, R"({
    "dataset": {"type": "synthetic", "num_sources": 2, "dim": 3,
                 "proximity": [0.2, 0.8], "per_source_pos": 8,
                 "per_source_neg": 8, "target_test_size": 12},
    "labeled_fractions": 0.4,
    "trials": 2,
    "mu_grid": [0.0, 1.0],
    "strategies": ["Random", "Uncertainty"],
    "budget_fraction": 0.1,
    "master_seed": 9
  })");
  const auto out = (dir.path / "sweep").string();
  CHECK(run_cli("sweep-mu --config " + cfg + " --out " + out + " --quiet") == 0);
  const auto table = read_file(fs::path(out) / "mu_sweep.csv");
  CHECK(table.find("mu,mean,std") == 0);

  const auto out2 = (dir.path / "active").string();
  CHECK(run_cli("active --config " + cfg + " --out " + out2 + " --quiet --jobs 2") == 0);
  CHECK(read_file(fs::path(out2) / "active_curves.csv")
            .find("strategy,t,mean_accuracy,std") == 0);
  CHECK(read_file(fs::path(out2) / "aulc.csv").find("strategy,aulc,p_vs_random") == 0);
  CHECK(fs::exists(fs::path(out2) / "query_log_Random.csv"));
}
