// Copyright 2026 The brrt Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "brrt/config_io.hpp"
#include "brrt/presets.hpp"

namespace brrt
{
namespace
{

namespace fs = std::filesystem;

const std::string kCli = BRRT_CLI_PATH;

int run_cli(const std::string & args, const std::string & stdout_path = "/dev/null")
{
  const std::string cmd = "\"" + kCli + "\" " + args + " > \"" + stdout_path + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string & name)
{
  const fs::path dir = fs::path(testing::TempDir()) / ("brrt_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Case 1 with a small deterministic budget.
std::string quick_config(const fs::path & dir)
{
  ScenarioConfig c = case1_config();
  c.search_params.sim_budget = 60.0;
  c.falsification_params.sim_budget = 60.0;
  const std::string path = (dir / "quick.json").string();
  write_file(path, dump_config(c));
  return path;
}

TEST(Cli, DumpDefaultConfigRoundTrips)
{
  const fs::path dir = scratch("dump");
  const std::string out = (dir / "default.json").string();
  ASSERT_EQ(run_cli("--dump-default-config", out), 0);
  EXPECT_EQ(load_config(out), default_config());
  const std::string out2 = (dir / "case2.json").string();
  ASSERT_EQ(run_cli("--dump-default-config --preset case2", out2), 0);
  EXPECT_EQ(load_config(out2), case2_config());
}

TEST(Cli, ExitCodes)
{
  const fs::path dir = scratch("codes");
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("run --runs 0"), 2);
  EXPECT_EQ(run_cli("run --method nope"), 2);
  EXPECT_EQ(run_cli("run --config \"" + (dir / "missing.json").string() + "\""), 2);
  write_file((dir / "bad.json").string(), R"({"unknown_key": 1})");
  EXPECT_EQ(run_cli("run --config \"" + (dir / "bad.json").string() + "\""), 2);
  Json j = config_to_json(case1_config());
  j["sim_params"]["dt_sim"] = 0.0;
  write_file((dir / "invalid.json").string(), j.dump());
  EXPECT_EQ(run_cli("run --config \"" + (dir / "invalid.json").string() + "\""), 2);
  EXPECT_EQ(run_cli("replay --tree \"" + (dir / "none.json").string() + "\" --node 0"), 3);
}

TEST(Cli, RunReplayPlotOutputs)
{
  const fs::path dir = scratch("outputs");
  const std::string cfg = quick_config(dir);
  const fs::path out = dir / "rrt";
  ASSERT_EQ(
    run_cli(
      "run --config \"" + cfg + "\" --method rrt --runs 2 --seed 5 --workers 1 --dump-tree --out \"" +
      out.string() + "\""),
    0);
  for (const char * f :
       {"report.json", "timing.json", "box.svg", "run_0_trace.csv", "run_1_trace.csv", "traj_0.svg",
        "traj_1.svg", "run_0_tree.csv", "run_0_tree.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const Json report = Json::parse(read_file((out / "report.json").string()));
  EXPECT_EQ(report.at("records").size(), 2u);
  EXPECT_EQ(report.at("method"), "rrt");

  // Replaying the best node reproduces the run's trace CSV.
  ScenarioConfig loaded;
  const SearchTree tree =
    tree_from_json(Json::parse(read_file((out / "run_0_tree.json").string())), loaded);
  const std::string replayed = (dir / "replayed.csv").string();
  ASSERT_EQ(
    run_cli(
      "replay --tree \"" + (out / "run_0_tree.json").string() + "\" --node " +
      std::to_string(tree.best_node_id()) + " --out \"" + replayed + "\""),
    0);
  EXPECT_EQ(read_file(replayed), read_file((out / "run_0_trace.csv").string()));
  EXPECT_EQ(run_cli("replay --tree \"" + (out / "run_0_tree.json").string() + "\" --node 100000"), 3);

  fs::remove(out / "box.svg");
  fs::remove(out / "traj_1.svg");
  ASSERT_EQ(run_cli("plot --report \"" + (out / "report.json").string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out / "box.svg"));
  EXPECT_TRUE(fs::exists(out / "traj_1.svg"));
}

TEST(Cli, FalsificationRunWritesReport)
{
  const fs::path dir = scratch("fals");
  const std::string cfg = quick_config(dir);
  ASSERT_EQ(
    run_cli(
      "run --config \"" + cfg + "\" --method falsification --runs 1 --seed 2 --out \"" +
      (dir / "out").string() + "\""),
    0);
  const Json report = Json::parse(read_file((dir / "out" / "report.json").string()));
  EXPECT_EQ(report.at("method"), "falsification");
  EXPECT_TRUE(fs::exists(dir / "out" / "run_0_trace.csv"));
}

TEST(Cli, FixedSeedRunsAreByteIdentical)
{
  const fs::path dir = scratch("determinism");
  const std::string cfg = quick_config(dir);
  for (const char * method : {"rrt", "falsification"}) {
    for (const char * name : {"a", "b"}) {
      ASSERT_EQ(
        run_cli(
          "run --config \"" + cfg + "\" --method " + method + " --runs 2 --seed 9 --workers 1 --out \"" +
          (dir / (std::string(method) + name)).string() + "\""),
        0);
    }
    const fs::path a = dir / (std::string(method) + "a");
    const fs::path b = dir / (std::string(method) + "b");
    for (const char * f : {"report.json", "run_0_trace.csv", "run_1_trace.csv"}) {
      EXPECT_EQ(read_file((a / f).string()), read_file((b / f).string())) << method << " " << f;
    }
  }
}

}  // namespace
}  // namespace brrt
