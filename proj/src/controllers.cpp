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

#include "brrt/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brrt/errors.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

namespace
{

Vec2 rotate(Vec2 v, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

bool is_rear(Zone z) { return z == Zone::kRearLeft || z == Zone::kRearRight; }

std::optional<Zone> maneuver_zone_of(EgoMode mode)
{
  switch (maneuver_lane_offset(mode)) {
    case 1:
      return Zone::kLeft;
    case -1:
      return Zone::kRight;
    default:
      return std::nullopt;
  }
}

Controls constant_speed(const KinematicState & s, const VehicleSpec & spec)
{
  return {spec.controller_params.k_p * (spec.controller_params.target_speed - s.v), 0.0};
}

}  // namespace

OccupancyReport sense(const SimState & state, int ego, const ScenarioConfig & config)
{
  const VehicleSpec & spec = config.spec(ego);
  const ControllerParams & cp = spec.controller_params;
  const KinematicState & me = state.vehicles.at(ego);
  const OrientedRect body = footprint(me, spec);
  const Vec2 my_vel = velocity(me);

  OccupancyReport report;
  for (const SensorSpec & sensor : spec.sensors) {
    const Vec2 apex = body.to_world({sensor.mount_x, sensor.mount_y});
    const double boresight = me.theta + sensor.boresight;
    for (int j = 0; j < config.vehicle_count(); ++j) {
      if (j == ego) {
        continue;
      }
      const KinematicState & other = state.vehicles[j];
      const OrientedRect rect = footprint(other, config.spec(j));

      Zone zone = sensor.zone;
      if (sensor.zone == Zone::kFront) {
        const double half = 0.5 * sensor.fov;
        const bool left = rect_intersects_sector(rect, {apex, boresight + 0.5 * half, half, sensor.range});
        const bool right = rect_intersects_sector(rect, {apex, boresight - 0.5 * half, half, sensor.range});
        if (left && right) {
          zone = Zone::kFront;
        } else if (left) {
          zone = Zone::kFrontLeft;
        } else if (right) {
          zone = Zone::kFrontRight;
        } else {
          continue;
        }
      } else if (!rect_intersects_sector(rect, {apex, boresight, sensor.fov, sensor.range})) {
        continue;
      }

      const double distance = distance_to_rect(apex, rect);
      const Vec2 rel_pos = rect.center - body.center;
      const Vec2 rel_vel = velocity(other) - my_vel;
      bool risk = false;
      if (is_rear(zone)) {
        risk = distance <= cp.rear_range_fraction * sensor.range && dot(rel_pos, rel_vel) < 0.0;
      } else {
        const TtcResult ttc = time_to_collision(
          me, spec, other, config.spec(j), cp.front_ttc_threshold, config.sim_params.dt_ttc);
        risk = ttc.ttc.has_value() && *ttc.ttc < cp.front_ttc_threshold;
      }

      ZoneReading & r = report.at(zone);
      r.risk = r.risk || risk;
      if (!r.occupied || distance < r.distance) {
        r.nearest = j;
        r.distance = distance;
        r.rel_position = rotate(rel_pos, -me.theta);
        r.rel_velocity = rotate(rel_vel, -me.theta);
      }
      r.occupied = true;
    }
  }
  return report;
}

Controls move_to_pose(
  const KinematicState & current, const Waypoint & target, const VehicleSpec & spec, bool terminal)
{
  const ControllerParams & g = spec.controller_params;
  const double dx = target.x - current.x;
  const double dy = target.y - current.y;
  const double rho = std::hypot(dx, dy);
  if (rho < 1e-9) {
    throw GeometryError("DegenerateTarget: target coincides with the vehicle position");
  }
  const double bearing = std::atan2(dy, dx);
  const double alpha = normalize_angle(bearing - current.theta);
  const double beta = normalize_angle(target.theta - bearing);

  double v_cmd = std::min(target.v, spec.max_speed);
  double accel = g.k_p * (v_cmd - current.v);
  if (terminal) {
    v_cmd = std::min(g.k_rho * rho, v_cmd);
    accel = g.k_p * (v_cmd - current.v);
    if (std::abs(alpha) > 0.5 * std::numbers::pi) {
      // Without reverse gear a target that has fallen behind means arrival.
      accel = -spec.max_decel;
    } else if (current.v > v_cmd) {
      // Constant deceleration that stops on the target despite the speed lag.
      accel = std::min(accel, -current.v * current.v / (2.0 * rho));
    }
  }
  const double omega = g.k_alpha * alpha + g.k_beta * beta;
  const double steer = std::atan(omega * spec.wheelbase / std::max(current.v, 0.5));
  return {accel, std::clamp(steer, -spec.max_steer, spec.max_steer)};
}

Controls track_segment(
  const KinematicState & current, AgentControllerState & tracker, const TargetPathSegment & segment,
  const VehicleSpec & spec)
{
  const auto & wps = segment.waypoints;
  if (wps.empty()) {
    return {spec.controller_params.k_p * -current.v, 0.0};
  }
  const Vec2 p{current.x, current.y};
  while (tracker.waypoint_index < wps.size()) {
    const Waypoint & w = wps[tracker.waypoint_index];
    const Vec2 d = p - Vec2{w.x, w.y};
    if (norm(d) < spec.controller_params.capture_radius || dot(d, heading_vector(w.theta)) > 0.0) {
      ++tracker.waypoint_index;
    } else {
      break;
    }
  }
  if (tracker.waypoint_index < wps.size()) {
    return move_to_pose(current, wps[tracker.waypoint_index], spec, false);
  }
  // Past the end: follow a carrot on the last waypoint's line.
  const Waypoint & last = wps.back();
  const Vec2 dir = heading_vector(last.theta);
  const double along = std::max(dot(p - Vec2{last.x, last.y}, dir), 0.0);
  const Vec2 carrot = Vec2{last.x, last.y} + (along + std::max(current.v, 5.0)) * dir;
  return move_to_pose(current, {carrot.x, carrot.y, last.theta, last.v}, spec, false);
}

double ego_longitudinal(const KinematicState & state, EgoMode mode, const VehicleSpec & spec)
{
  if (is_braking(mode)) {
    return -spec.max_decel;
  }
  if (is_accelerating(mode)) {
    return spec.max_accel;
  }
  const ControllerParams & g = spec.controller_params;
  return std::clamp(g.k_p * (g.target_speed - state.v), -spec.max_decel, spec.max_accel);
}

double ego_lateral(const KinematicState & state, double reference_y, const VehicleSpec & spec)
{
  const ControllerParams & g = spec.controller_params;
  const double psi = normalize_angle(-state.theta);
  const double front_y = state.y + 0.5 * spec.wheelbase * std::sin(state.theta);
  const double e = reference_y - front_y;
  const double steer = psi + std::atan(g.stanley_k * e / (state.v + g.stanley_eps));
  return std::clamp(steer, -spec.max_steer, spec.max_steer);
}

std::optional<EgoMode> risk_response(const OccupancyReport & r)
{
  if (r.risk(Zone::kFront)) {
    if (r.clear(Zone::kRearLeft)) {
      return EgoMode::kBrakeLeft;
    }
    return r.clear(Zone::kRearRight) ? EgoMode::kBrakeRight : EgoMode::kBrakeStraight;
  }
  if (r.risk(Zone::kFrontLeft)) {
    return r.clear(Zone::kRearRight) ? EgoMode::kBrakeRight : EgoMode::kBrakeStraight;
  }
  if (r.risk(Zone::kFrontRight)) {
    return r.clear(Zone::kRearLeft) ? EgoMode::kBrakeLeft : EgoMode::kBrakeStraight;
  }
  if (r.risk(Zone::kRearLeft)) {
    if (r.clear(Zone::kFront) && r.clear(Zone::kFrontRight)) {
      return EgoMode::kAccelRight;
    }
    if (r.clear(Zone::kFront) && !r.risk(Zone::kFrontRight)) {
      return EgoMode::kAccelStraight;
    }
    return r.clear(Zone::kRearRight) ? EgoMode::kBrakeRight : EgoMode::kBrakeStraight;
  }
  if (r.risk(Zone::kRearRight)) {
    if (r.clear(Zone::kFront) && r.clear(Zone::kFrontLeft)) {
      return EgoMode::kAccelLeft;
    }
    if (r.clear(Zone::kFront) && !r.risk(Zone::kFrontLeft)) {
      return EgoMode::kAccelStraight;
    }
    return r.clear(Zone::kRearLeft) ? EgoMode::kBrakeLeft : EgoMode::kBrakeStraight;
  }
  return std::nullopt;
}

EgoControllerState supervisor_step(
  const EgoControllerState & prev, const OccupancyReport & report, double clock, double cooldown)
{
  EgoControllerState next = prev;
  if (const auto response = risk_response(report)) {
    next.mode = *response;
    next.risk_seen = true;
    next.last_risk_time = clock;
  } else if (!prev.risk_seen || clock - prev.last_risk_time >= cooldown) {
    next.mode = EgoMode::kNormal;
  }
  // Never steer into a side zone that is (or becomes) occupied.
  const auto zone = maneuver_zone_of(next.mode);
  if (zone && report.occupied(*zone)) {
    next.mode = EgoMode::kBrakeStraight;
  }
  next.maneuver_zone = maneuver_zone_of(next.mode);
  return next;
}

int maneuver_lane_offset(EgoMode mode)
{
  switch (mode) {
    case EgoMode::kBrakeLeft:
    case EgoMode::kAccelLeft:
      return 1;
    case EgoMode::kBrakeRight:
    case EgoMode::kAccelRight:
      return -1;
    default:
      return 0;
  }
}

bool is_braking(EgoMode mode)
{
  return mode == EgoMode::kBrakeStraight || mode == EgoMode::kBrakeLeft || mode == EgoMode::kBrakeRight;
}

bool is_accelerating(EgoMode mode)
{
  return mode == EgoMode::kAccelStraight || mode == EgoMode::kAccelLeft || mode == EgoMode::kAccelRight;
}

std::vector<Controls> compute_controls(
  SimState & state, const SegmentSet & segments, const ScenarioConfig & config)
{
  const int n = config.vehicle_count();
  std::vector<Controls> out(n);
  for (int i = 0; i < n; ++i) {
    const KinematicState & k = state.vehicles[i];
    if (k.wrecked) {
      continue;
    }
    const VehicleSpec & spec = config.spec(i);
    switch (spec.role) {
      case Role::kEgo: {
        auto & ctl = std::get<EgoControllerState>(state.controllers[i]);
        const OccupancyReport report = sense(state, i, config);
        const EgoMode before = ctl.mode;
        ctl = supervisor_step(ctl, report, state.clock, spec.controller_params.cooldown);
        if (ctl.mode == EgoMode::kNormal && before != EgoMode::kNormal) {
          ctl.lane_center_y = config.road.lane_center(config.road.nearest_lane(k.y));
        }
        const double ref =
          ctl.lane_center_y + maneuver_lane_offset(ctl.mode) * config.road.lane_width;
        out[i] = {ego_longitudinal(k, ctl.mode, spec), ego_lateral(k, ref, spec)};
        break;
      }
      case Role::kAgentTracked: {
        auto & tracker = std::get<AgentControllerState>(state.controllers[i]);
        static const TargetPathSegment kEmpty;
        const TargetPathSegment & seg = i < static_cast<int>(segments.size()) ? segments[i] : kEmpty;
        out[i] = track_segment(k, tracker, seg, spec);
        break;
      }
      case Role::kAgentConstant:
        out[i] = constant_speed(k, spec);
        break;
    }
  }
  return out;
}

}  // namespace brrt
