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

#ifndef BRRT__EXPERIMENT_HPP_
#define BRRT__EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brrt/config_io.hpp"
#include "brrt/cost.hpp"
#include "brrt/rrt.hpp"
#include "brrt/scenario.hpp"

namespace brrt
{

enum class Method { kRrt, kFalsification };
const char * to_string(Method method);
Method method_from_string(const std::string & name);

/// Best costs below this count as escaping the local-minimum band.
inline constexpr double kEscapeCost = 8.0;

struct TraceFlags
{
  bool collision{false};
  bool lane_entry{false};
  bool local_minimum{false};
};

/// Ego collision anywhere in the trace; adversary footprint meeting the Ego's
/// initial lane band; first collision of the trace between two agents.
TraceFlags classify(const TraceSegment & trace, const ScenarioConfig & config);

struct RunRecord
{
  int index{0};
  std::uint64_t seed{0};
  bool failed{false};
  std::string error;
  CostReport cost;
  std::string termination;
  TraceFlags flags;
  /// RRT iterations or falsification evaluations.
  int iterations{0};
  int nodes{0};
  double sim_seconds{0.0};
  /// Wall time is kept out of report.json so reports stay reproducible.
  double wall_seconds{0.0};

  bool escaped() const { return !failed && cost.J < kEscapeCost; }
};

/// Five-number summary with Tukey whiskers. Quantiles interpolate linearly
/// between order statistics at positions p * (n + 1).
struct BoxStats
{
  double min{0.0};
  double q1{0.0};
  double median{0.0};
  double q3{0.0};
  double max{0.0};
  double mean{0.0};
  double whisker_lo{0.0};
  double whisker_hi{0.0};
  std::vector<double> outliers;

  friend bool operator==(const BoxStats &, const BoxStats &) = default;
};

double quantile(std::vector<double> values, double p);
BoxStats box_stats(const std::vector<double> & values);

struct Aggregates
{
  int count{0};
  int failed{0};
  double min{0.0};
  double mean{0.0};
  double max{0.0};
  BoxStats box;
  int collisions{0};
  int lane_entries{0};
  int local_minima{0};
  int escapes{0};

  friend bool operator==(const Aggregates &, const Aggregates &) = default;
};

/// Aggregates over the successful runs only.
Aggregates aggregate(const std::vector<RunRecord> & records);

struct BatchReport
{
  std::string scenario;
  Method method{Method::kRrt};
  int runs{0};
  std::uint64_t base_seed{0};
  double budget{0.0};
  std::vector<RunRecord> records;
  Aggregates aggregates;
  /// Reference (min, mean, max) for the preset scenarios, shown in plots only.
  std::optional<std::array<double, 3>> reference;
};

std::optional<std::array<double, 3>> reference_aggregates(const std::string & scenario, Method method);

struct RunOutput
{
  RunRecord record;
  TraceSegment trace;
  std::optional<SearchTree> tree;
};

/// One search (or annealing run) with the given seed. Errors are captured in
/// the record instead of being thrown.
RunOutput run_single(const ScenarioConfig & config, Method method, std::uint64_t seed, int index = 0);

/// Called from the submitting thread, in run order, after each run finishes.
using RunSink = std::function<void(const RunOutput &)>;

/// Runs seeds base_seed .. base_seed + runs - 1 on `workers` threads (0 picks
/// the hardware concurrency). `budget` > 0 overrides the wall-clock budget.
BatchReport run_batch(
  const ScenarioConfig & config, Method method, int runs, double budget, std::uint64_t base_seed,
  int workers = 0, const RunSink & sink = {});

Json report_to_json(const BatchReport & report);
/// Records are read back and the aggregates recomputed from them.
BatchReport report_from_json(const Json & json);
Json timing_to_json(const BatchReport & report);

}  // namespace brrt

#endif  // BRRT__EXPERIMENT_HPP_
