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

#ifndef BRRT__FALSIFICATION_HPP_
#define BRRT__FALSIFICATION_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "brrt/cost.hpp"
#include "brrt/random.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

struct ParamSpec
{
  std::string name;
  Interval range;
};

/// Parameter layout: every non-degenerate initial-state axis of every vehicle,
/// then a lateral position and a target speed per control point for each
/// tracked agent.
std::vector<ParamSpec> param_layout(const ScenarioConfig & config);

/// Longitudinal stations of the control points: equal interior spacing over the road.
std::vector<double> control_stations(const ScenarioConfig & config);

struct DecodedScenario
{
  SimState initial;
  SegmentSet paths;
};

/// Builds the initial snapshot and each tracked agent's full waypoint list.
/// Throws ConfigError (OutOfRange) when a value leaves its interval.
DecodedScenario decode(const std::vector<double> & params, const ScenarioConfig & config);

/// Inverse of decode on the parameterized values.
std::vector<double> encode(const DecodedScenario & scenario, const ScenarioConfig & config);

struct AnnealSettings
{
  double sigma_fraction{0.1};
  double cooling{0.95};
  int cooling_interval{20};
  int t0_samples{20};
  /// Warm-up costs at or above this value are left out of the temperature
  /// estimate (sentinel costs would otherwise dominate the spread).
  double t0_cost_cap{std::numeric_limits<double>::infinity()};
};

struct AnnealResult
{
  std::vector<double> best;
  double best_cost{0.0};
  int evaluations{0};
  /// Incumbent best cost after each evaluation.
  std::vector<double> incumbent;
  /// Temperature after the warm-up samples.
  double initial_temperature{0.0};
};

using Objective = std::function<double(const std::vector<double> &)>;
/// Called before each evaluation with the count so far; true stops the run.
using StopRule = std::function<bool(int evaluations)>;

/// Simulated annealing over a box: warm-up samples fix the initial temperature
/// (their cost spread) and the start point (their best); Gaussian steps are
/// reflected at the bounds and the temperature cools geometrically.
AnnealResult anneal(
  const std::vector<Interval> & bounds, const Objective & objective, const AnnealSettings & settings,
  RandomSource & rng, const StopRule & stop);

/// Folds v back into [lo, hi] by mirror reflection.
double reflect_into(double v, const Interval & range);

struct FalsificationResult
{
  std::vector<double> params;
  CostReport best_cost;
  TraceSegment best_trace;
  int evaluations{0};
  std::vector<double> incumbent;
  std::string termination;
  double sim_seconds{0.0};
  double wall_seconds{0.0};
  std::uint64_t seed{0};
};

/// Annealing search over the scenario parameters with fixed-duration simulations.
FalsificationResult falsify(const ScenarioConfig & config, std::optional<std::uint64_t> seed = std::nullopt);

/// Cost of one parameter vector (full simulation of the configured duration).
CostReport evaluate_params(
  const std::vector<double> & params, const ScenarioConfig & config, TraceSegment * trace = nullptr);

}  // namespace brrt

#endif  // BRRT__FALSIFICATION_HPP_
