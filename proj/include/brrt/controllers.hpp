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

#ifndef BRRT__CONTROLLERS_HPP_
#define BRRT__CONTROLLERS_HPP_

#include <array>
#include <optional>
#include <vector>

#include "brrt/geometry.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

struct ZoneReading
{
  bool occupied{false};
  /// Occupied by a target that is closing in (see sense()).
  bool risk{false};
  /// Nearest target in the zone, if any.
  std::optional<int> nearest;
  double distance{0.0};
  /// Nearest target's center and velocity relative to the Ego, in the Ego body frame.
  Vec2 rel_position;
  Vec2 rel_velocity;
};

struct OccupancyReport
{
  std::array<ZoneReading, kZoneCount> zones{};

  const ZoneReading & at(Zone z) const { return zones[static_cast<int>(z)]; }
  ZoneReading & at(Zone z) { return zones[static_cast<int>(z)]; }
  bool occupied(Zone z) const { return at(z).occupied; }
  bool risk(Zone z) const { return at(z).risk; }
  bool clear(Zone z) const { return !at(z).occupied; }
};

/// Zone occupancy around `ego`. A target occupies a sensor's zone iff its
/// footprint meets the sensor's circular sector. The front sensor splits into
/// front (target spans both half-angles), front_left and front_right.
/// Risk: projected time-to-collision under front_ttc_threshold for the front
/// and side zones; for the rear zones, a closing target within
/// rear_range_fraction of the sensor range.
OccupancyReport sense(const SimState & state, int ego, const ScenarioConfig & config);

/// Polar-coordinate pose controller (move-to-pose). With `terminal` the
/// commanded speed decays with the distance to the target; otherwise the
/// target speed is carried through (intermediate path targets).
Controls move_to_pose(
  const KinematicState & current, const Waypoint & target, const VehicleSpec & spec,
  bool terminal = true);

/// Tracks a target path segment, advancing through waypoints as they are
/// captured or passed, then holding the last waypoint's line and speed.
Controls track_segment(
  const KinematicState & current, AgentControllerState & tracker, const TargetPathSegment & segment,
  const VehicleSpec & spec);

double ego_longitudinal(const KinematicState & state, EgoMode mode, const VehicleSpec & spec);

/// Stanley lateral law against the horizontal reference line y = reference_y.
double ego_lateral(const KinematicState & state, double reference_y, const VehicleSpec & spec);

/// Emergency response to the current risks, or nullopt when nothing is at risk.
std::optional<EgoMode> risk_response(const OccupancyReport & report);

EgoControllerState supervisor_step(
  const EgoControllerState & prev, const OccupancyReport & report, double clock, double cooldown);

/// Lateral offset of the Stanley reference, in lanes (+1 left, -1 right).
int maneuver_lane_offset(EgoMode mode);
bool is_braking(EgoMode mode);
bool is_accelerating(EgoMode mode);

/// Runs every vehicle's controller for one tick, updating controller states in place.
std::vector<Controls> compute_controls(
  SimState & state, const SegmentSet & segments, const ScenarioConfig & config);

}  // namespace brrt

#endif  // BRRT__CONTROLLERS_HPP_
