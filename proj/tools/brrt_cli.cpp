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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "brrt/config_io.hpp"
#include "brrt/errors.hpp"
#include "brrt/experiment.hpp"
#include "brrt/plots.hpp"
#include "brrt/presets.hpp"
#include "brrt/rrt.hpp"
#include "brrt/vehicle_sim.hpp"

namespace fs = std::filesystem;

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string trace_csv(const brrt::TraceSegment & trace, const brrt::ScenarioConfig & config)
{
  std::ostringstream ss;
  brrt::write_trace_csv(ss, trace, config);
  return ss.str();
}

void emit_plots(
  const brrt::BatchReport & report, const fs::path & dir, const brrt::RoadSpec & road, double label_interval)
{
  brrt::write_file(
    (dir / "box.svg").string(),
    brrt::box_svg({brrt::series_from_report(report)}, report.scenario + ": minimum cost per run"));
  for (const brrt::RunRecord & r : report.records) {
    const fs::path csv = dir / ("run_" + std::to_string(r.index) + "_trace.csv");
    if (r.failed || !fs::exists(csv)) {
      continue;
    }
    std::ifstream in(csv);
    const brrt::TraceTable table = brrt::read_trace_csv(in);
    std::ostringstream title;
    title << report.scenario << " " << brrt::to_string(report.method) << " run " << r.index
          << ", J = " << r.cost.J;
    brrt::write_file(
      (dir / ("traj_" + std::to_string(r.index) + ".svg")).string(),
      brrt::trajectory_svg(table, road, label_interval, title.str()));
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Boundary-case collision search for simulated driving scenarios"};
  app.require_subcommand(0, 1);
  bool dump_default = false;
  app.add_flag("--dump-default-config", dump_default, "Print the default scenario JSON and exit");
  std::string preset = "case1";
  app.add_option("--preset", preset, "Preset printed by --dump-default-config")
    ->check(CLI::IsMember({"case1", "case2"}));

  std::string config_path;
  std::string method_name = "rrt";
  int runs = 1;
  double budget = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  int workers = 0;
  bool dump_tree = false;
  double label_interval = 1.0;
  auto * run = app.add_subcommand("run", "Run a batch of searches");
  run->add_option("--config", config_path, "Scenario JSON (default: built-in case 1)");
  run->add_option("--method", method_name, "rrt or falsification")
    ->check(CLI::IsMember({"rrt", "falsification"}));
  run->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
  run->add_option("--budget", budget, "Wall-clock budget per run in seconds (default: from config)");
  run->add_option("--seed", seed, "Base seed (default: rng_seed from config)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
  run->add_flag("--dump-tree", dump_tree, "Also write run_<i>_tree.csv and run_<i>_tree.json (rrt)");
  run->add_option("--label-interval", label_interval, "Seconds between numbered footprints in trajectory plots");

  std::string tree_path;
  int node_id = 0;
  std::string replay_out;
  auto * replay = app.add_subcommand("replay", "Re-simulate the path to a tree node and print its trace CSV");
  replay->add_option("--tree", tree_path, "Tree JSON written by run --dump-tree")->required();
  replay->add_option("--node", node_id, "Node id")->required();
  replay->add_option("--out", replay_out, "Write the CSV here instead of stdout");

  std::string report_path;
  std::string plot_config;
  auto * plot = app.add_subcommand("plot", "Redraw box and trajectory plots from a saved report");
  plot->add_option("--report", report_path, "report.json")->required();
  plot->add_option("--config", plot_config, "Scenario JSON for the road layout (default: preset by name)");
  plot->add_option("--label-interval", label_interval, "Seconds between numbered footprints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (dump_default) {
      std::cout << brrt::dump_config(preset == "case2" ? brrt::case2_config() : brrt::default_config());
      return 0;
    }
    if (*run) {
      const brrt::ScenarioConfig config =
        config_path.empty() ? brrt::default_config() : brrt::load_config(config_path);
      brrt::validate(config);
      const brrt::Method method = brrt::method_from_string(method_name);
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      const auto sink = [&](const brrt::RunOutput & out) {
        const std::string stem = "run_" + std::to_string(out.record.index);
        if (out.record.failed) {
          std::cerr << stem << " failed: " << out.record.error << "\n";
          return;
        }
        brrt::write_file((dir / (stem + "_trace.csv")).string(), trace_csv(out.trace, config));
        if (dump_tree && out.tree) {
          std::ostringstream edges;
          brrt::write_tree_edges_csv(edges, *out.tree);
          brrt::write_file((dir / (stem + "_tree.csv")).string(), edges.str());
          brrt::write_file(
            (dir / (stem + "_tree.json")).string(), brrt::tree_to_json(*out.tree, config).dump() + "\n");
        }
        std::cerr << stem << ": J = " << out.record.cost.J << " (" << out.record.termination << ")\n";
      };
      const brrt::BatchReport report = brrt::run_batch(
        config, method, runs, budget, seed.value_or(config.rng_seed), workers, sink);
      brrt::write_file((dir / "report.json").string(), brrt::report_to_json(report).dump(2) + "\n");
      brrt::write_file((dir / "timing.json").string(), brrt::timing_to_json(report).dump(2) + "\n");
      emit_plots(report, dir, config.road, label_interval);
      const brrt::Aggregates & a = report.aggregates;
      std::cout << "runs " << a.count << " ok, " << a.failed << " failed; min " << a.min << " mean " << a.mean
                << " max " << a.max << "; escapes " << a.escapes << ", local minima " << a.local_minima
                << ", collisions " << a.collisions << ", lane entries " << a.lane_entries << "\n";
      return a.failed > 0 ? kExitRuntime : 0;
    }
    if (*replay) {
      brrt::ScenarioConfig config;
      const brrt::SearchTree tree =
        brrt::tree_from_json(brrt::Json::parse(brrt::read_file(tree_path)), config);
      const std::string csv = trace_csv(brrt::replay(tree, node_id, config), config);
      if (replay_out.empty()) {
        std::cout << csv;
      } else {
        brrt::write_file(replay_out, csv);
      }
      return 0;
    }
    if (*plot) {
      const brrt::BatchReport report =
        brrt::report_from_json(brrt::Json::parse(brrt::read_file(report_path)));
      brrt::ScenarioConfig config = brrt::default_config();
      if (!plot_config.empty()) {
        config = brrt::load_config(plot_config);
      } else if (report.scenario == "case2") {
        config = brrt::case2_config();
      }
      emit_plots(report, fs::path(report_path).parent_path(), config.road, label_interval);
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const brrt::ConfigError & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const brrt::Json::exception & e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
