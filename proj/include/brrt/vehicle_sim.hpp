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

#ifndef BRRT__VEHICLE_SIM_HPP_
#define BRRT__VEHICLE_SIM_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brrt/geometry.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

OrientedRect footprint(const KinematicState & state, const VehicleSpec & spec);
Vec2 velocity(const KinematicState & state);

/// Contact of two footprints, seen from the first vehicle's body frame.
struct ContactInfo
{
  ImpactSide side{ImpactSide::kFront};
  /// Extent of the overlap measured along the contacted side (m).
  double extent{0.0};
  /// Overlap area (m^2).
  double area{0.0};
};

/// Separating-axis overlap test on the two footprints. The contact is
/// reported on `a`'s sides: the face with the shallowest penetration.
std::optional<ContactInfo> check_collision(
  const KinematicState & a, const VehicleSpec & spec_a, const KinematicState & b,
  const VehicleSpec & spec_b);

/// Contact extent over the full length of the contacted side, clamped to [0, 1].
double surface_ratio(const ContactInfo & contact, const VehicleSpec & ego_spec);

struct TtcResult
{
  std::optional<double> ttc;
  std::optional<ContactInfo> contact;
  double relative_speed{0.0};
};

/// First time at which the footprints overlap when both vehicles keep their
/// current speed and heading. The overlap window is solved exactly; the
/// contact geometry is sampled at the first `dt_ttc` grid instant inside it.
TtcResult time_to_collision(
  const KinematicState & ego, const VehicleSpec & ego_spec, const KinematicState & agent,
  const VehicleSpec & agent_spec, double horizon, double dt_ttc);

TtcResult time_to_collision(
  const SimState & state, int ego, int agent, const ScenarioConfig & config, double horizon);

Controls saturate(const Controls & raw, const VehicleSpec & spec);

/// Saturates the controls, integrates every vehicle with the kinematic
/// bicycle model and logs new collisions. Collided vehicles are frozen.
SimState step(
  const SimState & state, std::span<const Controls> controls, const ScenarioConfig & config, double dt);

/// Closed-loop simulator over a SimState. All persistent data lives in the
/// state, so a Simulation rebuilt from a saved state continues identically.
class Simulation
{
public:
  Simulation(const ScenarioConfig & config, SimState start);

  /// Hands new target paths to the agents and restarts their waypoint tracking.
  void set_segments(SegmentSet segments);

  /// Advances one dt_sim tick and returns the saturated controls applied.
  std::vector<Controls> tick();

  const SimState & state() const { return state_; }
  bool ego_collided() const { return state_.any_ego_collision(config_); }

private:
  const ScenarioConfig & config_;
  SimState state_;
  SegmentSet segments_;
};

/// Simulates `duration` seconds from `start`, stopping early at the first
/// Ego collision. Returns the full trace including applied inputs.
TraceSegment run_partial(
  const SimState & start, const SegmentSet & segments, const ScenarioConfig & config, double duration);

/// Number of dt_sim ticks in `duration`.
long long tick_count(double duration, const ScenarioConfig & config);

/// CSV export: header, one row per tick, `#collision,` footer lines.
void write_trace_csv(std::ostream & out, const TraceSegment & trace, const ScenarioConfig & config);

/// Row-oriented view of a trace CSV (used for re-plotting saved runs).
struct TraceTable
{
  std::vector<std::string> vehicle_names;
  std::vector<double> times;
  /// poses[row][vehicle] = (x, y, theta).
  std::vector<std::vector<std::array<double, 3>>> poses;
  std::vector<CollisionEvent> collisions;
};
TraceTable read_trace_csv(std::istream & in);

std::string format_double(double value);

}  // namespace brrt

#endif  // BRRT__VEHICLE_SIM_HPP_
