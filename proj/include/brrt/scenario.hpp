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

#ifndef BRRT__SCENARIO_HPP_
#define BRRT__SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "brrt/random.hpp"

namespace brrt
{

struct SimState;
struct KinematicState;

enum class Role { kEgo, kAgentTracked, kAgentConstant };

/// Occupancy zones around the Ego. Sensors mount on the five physical zones;
/// kFrontLeft/kFrontRight are derived from the front sensor's half-angles.
enum class Zone { kFront, kFrontLeft, kFrontRight, kLeft, kRight, kRearLeft, kRearRight };
inline constexpr int kZoneCount = 7;

const char * to_string(Role role);
const char * to_string(Zone zone);

struct SensorSpec
{
  Zone zone{Zone::kFront};
  double mount_x{0.0};
  double mount_y{0.0};
  double boresight{0.0};
  double fov{0.0};
  double range{0.0};

  friend bool operator==(const SensorSpec &, const SensorSpec &) = default;
};

/// Gains and thresholds; each role reads the subset it needs.
struct ControllerParams
{
  double k_rho{1.0};
  double k_alpha{4.0};
  double k_beta{-1.5};
  double stanley_k{2.5};
  double stanley_eps{0.1};
  double k_p{1.0};
  double cooldown{1.0};
  double capture_radius{1.0};
  double front_ttc_threshold{3.0};
  double rear_range_fraction{0.5};
  double target_speed{15.0};

  friend bool operator==(const ControllerParams &, const ControllerParams &) = default;
};

struct VehicleSpec
{
  std::string name;
  Role role{Role::kAgentTracked};
  double length{4.5};
  double width{1.8};
  double wheelbase{2.7};
  double max_speed{30.0};
  double max_accel{4.0};
  double max_decel{8.0};
  double max_steer{0.6};
  std::vector<SensorSpec> sensors;
  ControllerParams controller_params;

  friend bool operator==(const VehicleSpec &, const VehicleSpec &) = default;
};

struct Interval
{
  double lo{0.0};
  double hi{0.0};

  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
  double width() const { return hi - lo; }
  friend bool operator==(const Interval &, const Interval &) = default;
};

/// Axis-aligned box over (x m, y m, theta rad, v m/s).
struct IntervalBox
{
  Interval x;
  Interval y;
  Interval theta;
  Interval v;

  friend bool operator==(const IntervalBox &, const IntervalBox &) = default;
};

/// Straight road along +x. Lane i spans [y_min + i*w, y_min + (i+1)*w].
struct RoadSpec
{
  int lane_count{3};
  double lane_width{3.5};
  double length{300.0};
  double y_min{-5.25};

  double lane_center(int lane) const { return y_min + (lane + 0.5) * lane_width; }
  int nearest_lane(double y) const;
  friend bool operator==(const RoadSpec &, const RoadSpec &) = default;
};

struct SimParams
{
  double dt_sim{0.01};
  double dt_ttc{0.05};
  double ttc_horizon{10.0};

  friend bool operator==(const SimParams &, const SimParams &) = default;
};

/// RRT search knobs. Zero disables max_nodes / max_iterations / sim_budget.
struct SearchParams
{
  double delta_t{1.0};
  int n_candidates{5};
  double K{1.0};
  double T0{1e-3};
  double alpha{2.0};
  int max_fails{10};
  int m_neighbors{5};
  int max_reject{10};
  int novelty_stride{10};
  int covariance_refresh{50};
  double covariance_lambda{1e-6};
  double cost_threshold{0.0};
  double time_budget{120.0};
  int max_nodes{0};
  int max_iterations{0};
  double sim_budget{0.0};
  bool store_histories{false};
  bool parallel_candidates{false};

  friend bool operator==(const SearchParams &, const SearchParams &) = default;
};

struct FalsificationParams
{
  int n_control_points{5};
  double duration{10.0};
  double sigma_fraction{0.1};
  double cooling{0.95};
  int cooling_interval{20};
  int t0_samples{20};
  int max_evaluations{0};
  double sim_budget{0.0};

  friend bool operator==(const FalsificationParams &, const FalsificationParams &) = default;
};

/// Complete scenario description. Vehicle indices: egos first, then agents.
struct ScenarioConfig
{
  std::string name;
  std::vector<VehicleSpec> ego_specs;
  std::vector<VehicleSpec> agent_specs;
  RoadSpec road;
  std::vector<IntervalBox> init_sampling;
  IntervalBox waypoint_space;
  double d_leg{10.0};
  SimParams sim_params;
  SearchParams search_params;
  FalsificationParams falsification_params;
  std::uint64_t rng_seed{0};
  /// Agent-list index of the adversary used for batch classification.
  int adversary{0};

  int vehicle_count() const { return static_cast<int>(ego_specs.size() + agent_specs.size()); }
  int ego_count() const { return static_cast<int>(ego_specs.size()); }
  bool is_ego(int vehicle) const { return vehicle < ego_count(); }
  const VehicleSpec & spec(int vehicle) const;
  std::vector<int> ego_ids() const;
  std::vector<int> agent_ids() const;
  std::vector<int> tracked_agent_ids() const;

  friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

/// Throws ConfigError on the first violated invariant.
void validate(const ScenarioConfig & config);

struct Waypoint
{
  double x{0.0};
  double y{0.0};
  double theta{0.0};
  double v{0.0};

  friend bool operator==(const Waypoint &, const Waypoint &) = default;
};

/// Ordered waypoints forming an agent's immediate target path.
struct TargetPathSegment
{
  std::vector<Waypoint> waypoints;

  double length() const;
  friend bool operator==(const TargetPathSegment &, const TargetPathSegment &) = default;
};

/// One path per vehicle index; empty paths for egos and constant-speed agents.
using SegmentSet = std::vector<TargetPathSegment>;

/// Snapshot at clock 0 with the given vehicle states and reset controllers.
SimState make_initial_state(const ScenarioConfig & config, const std::vector<KinematicState> & vehicles);

/// Draws every vehicle's pose uniformly from its box and resets controllers.
/// Scenes with overlapping footprints are redrawn.
SimState sample_initial_states(const ScenarioConfig & config, RandomSource & rng);

Waypoint sample_waypoint(const IntervalBox & space, RandomSource & rng);

/// Extends `w` by `d_leg` along its heading; a leg leaving the (x, y) box is
/// broken at the boundary and continued along it, and truncated at a corner.
TargetPathSegment build_path_segment(const Waypoint & w, double d_leg, const IntervalBox & space);

/// Samples a fresh segment for every tracked agent.
SegmentSet sample_segments(const ScenarioConfig & config, RandomSource & rng);

}  // namespace brrt

#endif  // BRRT__SCENARIO_HPP_
