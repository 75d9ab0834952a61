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

#ifndef BRRT__SIM_STATE_HPP_
#define BRRT__SIM_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "brrt/scenario.hpp"

namespace brrt
{

struct KinematicState
{
  double x{0.0};
  double y{0.0};
  double theta{0.0};
  double v{0.0};
  double steer{0.0};
  /// Set after a collision; the vehicle stays frozen at v = 0.
  bool wrecked{false};

  friend bool operator==(const KinematicState &, const KinematicState &) = default;
};

enum class EgoMode {
  kNormal,
  kBrakeStraight,
  kBrakeLeft,
  kBrakeRight,
  kAccelStraight,
  kAccelLeft,
  kAccelRight,
};

const char * to_string(EgoMode mode);

struct EgoControllerState
{
  EgoMode mode{EgoMode::kNormal};
  bool risk_seen{false};
  double last_risk_time{0.0};
  /// Side zone the current steering maneuver moves into, if any.
  std::optional<Zone> maneuver_zone;
  /// Lateral reference of the lane being kept.
  double lane_center_y{0.0};

  friend bool operator==(const EgoControllerState &, const EgoControllerState &) = default;
};

struct AgentControllerState
{
  /// Index of the waypoint currently tracked; equals the waypoint count once
  /// the last one has been passed.
  std::size_t waypoint_index{0};

  friend bool operator==(const AgentControllerState &, const AgentControllerState &) = default;
};

using ControllerState = std::variant<std::monostate, EgoControllerState, AgentControllerState>;

enum class ImpactSide { kFront, kRear, kLeft, kRight };

const char * to_string(ImpactSide side);

struct CollisionEvent
{
  double time{0.0};
  int vehicle_a{0};
  int vehicle_b{0};
  double relative_speed{0.0};
  /// Surface ratio on vehicle_a (the Ego when one is involved).
  double surface_ratio{0.0};
  ImpactSide side{ImpactSide::kFront};

  bool involves(int vehicle) const { return vehicle_a == vehicle || vehicle_b == vehicle; }
  friend bool operator==(const CollisionEvent &, const CollisionEvent &) = default;
};

struct Controls
{
  double accel{0.0};
  double steer{0.0};

  friend bool operator==(const Controls &, const Controls &) = default;
};

/// Everything needed to resume a simulation: vehicle states, controller
/// states, clock and the collisions seen so far.
struct SimState
{
  double clock{0.0};
  /// Number of integration steps taken since the scenario start.
  std::int64_t tick{0};
  std::vector<KinematicState> vehicles;
  std::vector<ControllerState> controllers;
  std::vector<CollisionEvent> collisions;

  /// First logged collision involving `vehicle`, if any.
  const CollisionEvent * first_collision_of(int vehicle) const;
  bool any_ego_collision(const ScenarioConfig & config) const;

  friend bool operator==(const SimState &, const SimState &) = default;
};

/// States after each tick (spacing dt) plus the controls applied in that tick.
/// `origin` is the state the segment started from and is not part of `states`.
struct TraceSegment
{
  double dt{0.01};
  SimState origin;
  std::vector<SimState> states;
  std::vector<std::vector<Controls>> inputs;

  double duration() const { return dt * static_cast<double>(states.size()); }
  const SimState & final_state() const { return states.empty() ? origin : states.back(); }
  /// Appends `next`, whose origin must equal this trace's final state.
  void append(const TraceSegment & next);
};

}  // namespace brrt

#endif  // BRRT__SIM_STATE_HPP_
