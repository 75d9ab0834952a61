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

#include "brrt/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "brrt/errors.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

namespace
{

template <typename E>
struct EnumName
{
  E value;
  const char * name;
};

constexpr EnumName<Role> kRoles[] = {
  {Role::kEgo, "ego"}, {Role::kAgentTracked, "agent_tracked"}, {Role::kAgentConstant, "agent_constant"}};
constexpr EnumName<Zone> kZones[] = {
  {Zone::kFront, "front"},        {Zone::kFrontLeft, "front_left"}, {Zone::kFrontRight, "front_right"},
  {Zone::kLeft, "left"},          {Zone::kRight, "right"},          {Zone::kRearLeft, "rear_left"},
  {Zone::kRearRight, "rear_right"}};
constexpr EnumName<EgoMode> kModes[] = {
  {EgoMode::kNormal, "normal"},
  {EgoMode::kBrakeStraight, "brake_straight"},
  {EgoMode::kBrakeLeft, "brake_left"},
  {EgoMode::kBrakeRight, "brake_right"},
  {EgoMode::kAccelStraight, "accel_straight"},
  {EgoMode::kAccelLeft, "accel_left"},
  {EgoMode::kAccelRight, "accel_right"}};
constexpr EnumName<ImpactSide> kSides[] = {
  {ImpactSide::kFront, "front"}, {ImpactSide::kRear, "rear"}, {ImpactSide::kLeft, "left"}, {ImpactSide::kRight, "right"}};

template <typename E, std::size_t N>
const char * enum_name(const EnumName<E> (&table)[N], E value)
{
  for (const auto & e : table) {
    if (e.value == value) {
      return e.name;
    }
  }
  return "?";
}

template <typename E, std::size_t N>
E enum_value(const EnumName<E> (&table)[N], const std::string & name, const std::string & where)
{
  for (const auto & e : table) {
    if (name == e.name) {
      return e.value;
    }
  }
  throw ConfigError(where + ": unknown value \"" + name + "\"");
}

/// Strict object reader: every key must be consumed by a get call.
class Reader
{
public:
  Reader(const Json & json, std::string where) : json_(json), where_(std::move(where))
  {
    if (!json_.is_object()) {
      throw ConfigError(where_ + ": expected an object");
    }
  }

  ~Reader() = default;

  const Json * find(const std::string & key)
  {
    seen_.insert(key);
    const auto it = json_.find(key);
    return it == json_.end() ? nullptr : &*it;
  }

  std::string at(const std::string & key) const { return where_ + "." + key; }

  void get(const std::string & key, double & out)
  {
    if (const Json * v = find(key)) {
      out = number(*v, at(key));
    }
  }

  void get(const std::string & key, int & out)
  {
    if (const Json * v = find(key)) {
      if (!v->is_number_integer()) {
        throw ConfigError(at(key) + ": expected an integer");
      }
      out = v->get<int>();
    }
  }

  void get(const std::string & key, std::uint64_t & out)
  {
    if (const Json * v = find(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        throw ConfigError(at(key) + ": expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void get(const std::string & key, bool & out)
  {
    if (const Json * v = find(key)) {
      if (!v->is_boolean()) {
        throw ConfigError(at(key) + ": expected a boolean");
      }
      out = v->get<bool>();
    }
  }

  void get(const std::string & key, std::string & out)
  {
    if (const Json * v = find(key)) {
      if (!v->is_string()) {
        throw ConfigError(at(key) + ": expected a string");
      }
      out = v->get<std::string>();
    }
  }

  void get(const std::string & key, Interval & out)
  {
    if (const Json * v = find(key)) {
      if (!v->is_array() || v->size() != 2) {
        throw ConfigError(at(key) + ": expected [lo, hi]");
      }
      out = {number((*v)[0], at(key)), number((*v)[1], at(key))};
    }
  }

  void finish() const
  {
    for (auto it = json_.begin(); it != json_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(where_ + ": unknown key \"" + it.key() + "\"");
      }
    }
  }

  static double number(const Json & v, const std::string & where)
  {
    if (v.is_null()) {
      return std::numeric_limits<double>::infinity();
    }
    if (!v.is_number()) {
      throw ConfigError(where + ": expected a number");
    }
    return v.get<double>();
  }

private:
  const Json & json_;
  std::string where_;
  std::set<std::string> seen_;
};

Json interval_json(const Interval & iv) { return Json::array({iv.lo, iv.hi}); }

Json box_json(const IntervalBox & b)
{
  Json j;
  j["x"] = interval_json(b.x);
  j["y"] = interval_json(b.y);
  j["theta"] = interval_json(b.theta);
  j["v"] = interval_json(b.v);
  return j;
}

IntervalBox box_from(const Json & json, const std::string & where)
{
  IntervalBox b;
  Reader r(json, where);
  r.get("x", b.x);
  r.get("y", b.y);
  r.get("theta", b.theta);
  r.get("v", b.v);
  r.finish();
  return b;
}

Json vehicle_json(const VehicleSpec & v)
{
  Json j;
  j["name"] = v.name;
  j["role"] = enum_name(kRoles, v.role);
  j["length"] = v.length;
  j["width"] = v.width;
  j["wheelbase"] = v.wheelbase;
  j["max_speed"] = v.max_speed;
  j["max_accel"] = v.max_accel;
  j["max_decel"] = v.max_decel;
  j["max_steer"] = v.max_steer;
  j["sensors"] = Json::array();
  for (const SensorSpec & s : v.sensors) {
    Json js;
    js["zone"] = enum_name(kZones, s.zone);
    js["mount_x"] = s.mount_x;
    js["mount_y"] = s.mount_y;
    js["boresight"] = s.boresight;
    js["fov"] = s.fov;
    js["range"] = s.range;
    j["sensors"].push_back(js);
  }
  const ControllerParams & p = v.controller_params;
  Json jp;
  jp["k_rho"] = p.k_rho;
  jp["k_alpha"] = p.k_alpha;
  jp["k_beta"] = p.k_beta;
  jp["stanley_k"] = p.stanley_k;
  jp["stanley_eps"] = p.stanley_eps;
  jp["k_p"] = p.k_p;
  jp["cooldown"] = p.cooldown;
  jp["capture_radius"] = p.capture_radius;
  jp["front_ttc_threshold"] = p.front_ttc_threshold;
  jp["rear_range_fraction"] = p.rear_range_fraction;
  jp["target_speed"] = p.target_speed;
  j["controller_params"] = jp;
  return j;
}

VehicleSpec vehicle_from(const Json & json, const std::string & where)
{
  VehicleSpec v;
  Reader r(json, where);
  r.get("name", v.name);
  std::string role = enum_name(kRoles, v.role);
  r.get("role", role);
  v.role = enum_value(kRoles, role, r.at("role"));
  r.get("length", v.length);
  r.get("width", v.width);
  r.get("wheelbase", v.wheelbase);
  r.get("max_speed", v.max_speed);
  r.get("max_accel", v.max_accel);
  r.get("max_decel", v.max_decel);
  r.get("max_steer", v.max_steer);
  if (const Json * sensors = r.find("sensors")) {
    if (!sensors->is_array()) {
      throw ConfigError(r.at("sensors") + ": expected an array");
    }
    for (std::size_t i = 0; i < sensors->size(); ++i) {
      const std::string w = r.at("sensors") + "[" + std::to_string(i) + "]";
      Reader rs((*sensors)[i], w);
      SensorSpec s;
      std::string zone = "front";
      rs.get("zone", zone);
      s.zone = enum_value(kZones, zone, w + ".zone");
      rs.get("mount_x", s.mount_x);
      rs.get("mount_y", s.mount_y);
      rs.get("boresight", s.boresight);
      rs.get("fov", s.fov);
      rs.get("range", s.range);
      rs.finish();
      v.sensors.push_back(s);
    }
  }
  if (const Json * params = r.find("controller_params")) {
    ControllerParams & p = v.controller_params;
    Reader rp(*params, r.at("controller_params"));
    rp.get("k_rho", p.k_rho);
    rp.get("k_alpha", p.k_alpha);
    rp.get("k_beta", p.k_beta);
    rp.get("stanley_k", p.stanley_k);
    rp.get("stanley_eps", p.stanley_eps);
    rp.get("k_p", p.k_p);
    rp.get("cooldown", p.cooldown);
    rp.get("capture_radius", p.capture_radius);
    rp.get("front_ttc_threshold", p.front_ttc_threshold);
    rp.get("rear_range_fraction", p.rear_range_fraction);
    rp.get("target_speed", p.target_speed);
    rp.finish();
  }
  r.finish();
  return v;
}

template <typename T, typename F>
std::vector<T> list_from(Reader & r, const std::string & key, F && parse)
{
  std::vector<T> out;
  if (const Json * arr = r.find(key)) {
    if (!arr->is_array()) {
      throw ConfigError(r.at(key) + ": expected an array");
    }
    for (std::size_t i = 0; i < arr->size(); ++i) {
      out.push_back(parse((*arr)[i], r.at(key) + "[" + std::to_string(i) + "]"));
    }
  }
  return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json config_to_json(const ScenarioConfig & c)
{
  Json j;
  j["name"] = c.name;
  j["ego_specs"] = Json::array();
  for (const auto & v : c.ego_specs) {
    j["ego_specs"].push_back(vehicle_json(v));
  }
  j["agent_specs"] = Json::array();
  for (const auto & v : c.agent_specs) {
    j["agent_specs"].push_back(vehicle_json(v));
  }
  j["road"] = {
    {"lane_count", c.road.lane_count},
    {"lane_width", c.road.lane_width},
    {"length", c.road.length},
    {"y_min", c.road.y_min}};
  j["init_sampling"] = Json::array();
  for (const auto & b : c.init_sampling) {
    j["init_sampling"].push_back(box_json(b));
  }
  j["waypoint_space"] = box_json(c.waypoint_space);
  j["d_leg"] = c.d_leg;
  j["sim_params"] = {
    {"dt_sim", c.sim_params.dt_sim},
    {"dt_ttc", c.sim_params.dt_ttc},
    {"ttc_horizon", c.sim_params.ttc_horizon}};
  const SearchParams & s = c.search_params;
  j["search_params"] = {
    {"delta_t", s.delta_t},
    {"n_candidates", s.n_candidates},
    {"K", s.K},
    {"T0", s.T0},
    {"alpha", s.alpha},
    {"max_fails", s.max_fails},
    {"m_neighbors", s.m_neighbors},
    {"max_reject", s.max_reject},
    {"novelty_stride", s.novelty_stride},
    {"covariance_refresh", s.covariance_refresh},
    {"covariance_lambda", s.covariance_lambda},
    {"cost_threshold", s.cost_threshold},
    {"time_budget", s.time_budget},
    {"max_nodes", s.max_nodes},
    {"max_iterations", s.max_iterations},
    {"sim_budget", s.sim_budget},
    {"store_histories", s.store_histories},
    {"parallel_candidates", s.parallel_candidates}};
  const FalsificationParams & f = c.falsification_params;
  j["falsification_params"] = {
    {"n_control_points", f.n_control_points},
    {"duration", f.duration},
    {"sigma_fraction", f.sigma_fraction},
    {"cooling", f.cooling},
    {"cooling_interval", f.cooling_interval},
    {"t0_samples", f.t0_samples},
    {"max_evaluations", f.max_evaluations},
    {"sim_budget", f.sim_budget}};
  j["rng_seed"] = c.rng_seed;
  j["adversary"] = c.adversary;
  return j;
}

ScenarioConfig config_from_json(const Json & json)
{
  ScenarioConfig c;
  Reader r(json, "config");
  r.get("name", c.name);
  c.ego_specs = list_from<VehicleSpec>(r, "ego_specs", vehicle_from);
  c.agent_specs = list_from<VehicleSpec>(r, "agent_specs", vehicle_from);
  if (const Json * road = r.find("road")) {
    Reader rr(*road, "config.road");
    rr.get("lane_count", c.road.lane_count);
    rr.get("lane_width", c.road.lane_width);
    rr.get("length", c.road.length);
    rr.get("y_min", c.road.y_min);
    rr.finish();
  }
  c.init_sampling = list_from<IntervalBox>(r, "init_sampling", box_from);
  if (const Json * wp = r.find("waypoint_space")) {
    c.waypoint_space = box_from(*wp, "config.waypoint_space");
  }
  r.get("d_leg", c.d_leg);
  if (const Json * sp = r.find("sim_params")) {
    Reader rs(*sp, "config.sim_params");
    rs.get("dt_sim", c.sim_params.dt_sim);
    rs.get("dt_ttc", c.sim_params.dt_ttc);
    rs.get("ttc_horizon", c.sim_params.ttc_horizon);
    rs.finish();
  }
  if (const Json * sp = r.find("search_params")) {
    SearchParams & s = c.search_params;
    Reader rs(*sp, "config.search_params");
    rs.get("delta_t", s.delta_t);
    rs.get("n_candidates", s.n_candidates);
    rs.get("K", s.K);
    rs.get("T0", s.T0);
    rs.get("alpha", s.alpha);
    rs.get("max_fails", s.max_fails);
    rs.get("m_neighbors", s.m_neighbors);
    rs.get("max_reject", s.max_reject);
    rs.get("novelty_stride", s.novelty_stride);
    rs.get("covariance_refresh", s.covariance_refresh);
    rs.get("covariance_lambda", s.covariance_lambda);
    rs.get("cost_threshold", s.cost_threshold);
    rs.get("time_budget", s.time_budget);
    rs.get("max_nodes", s.max_nodes);
    rs.get("max_iterations", s.max_iterations);
    rs.get("sim_budget", s.sim_budget);
    rs.get("store_histories", s.store_histories);
    rs.get("parallel_candidates", s.parallel_candidates);
    rs.finish();
  }
  if (const Json * fp = r.find("falsification_params")) {
    FalsificationParams & f = c.falsification_params;
    Reader rf(*fp, "config.falsification_params");
    rf.get("n_control_points", f.n_control_points);
    rf.get("duration", f.duration);
    rf.get("sigma_fraction", f.sigma_fraction);
    rf.get("cooling", f.cooling);
    rf.get("cooling_interval", f.cooling_interval);
    rf.get("t0_samples", f.t0_samples);
    rf.get("max_evaluations", f.max_evaluations);
    rf.get("sim_budget", f.sim_budget);
    rf.finish();
  }
  r.get("rng_seed", c.rng_seed);
  r.get("adversary", c.adversary);
  r.finish();
  return c;
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string & path, const std::string & contents)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << contents;
}

ScenarioConfig load_config(const std::string & path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error & e) {
    throw ConfigError(e.what());
  }
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error & e) {
    throw ConfigError(path + ": " + e.what());
  }
  ScenarioConfig c = config_from_json(json);
  validate(c);
  return c;
}

std::string dump_config(const ScenarioConfig & config) { return config_to_json(config).dump(2) + "\n"; }

Json cost_to_json(const CostReport & c)
{
  Json j;
  j["J"] = c.J;
  j["S"] = c.S;
  j["v_coll"] = c.v_coll;
  j["ttc_min"] = finite_or_null(c.ttc_min);
  j["collided"] = c.collided;
  j["at_time"] = c.at_time;
  j["no_projection"] = c.no_projection;
  j["ego"] = c.ego;
  j["other"] = c.other ? Json(*c.other) : Json(nullptr);
  return j;
}

CostReport cost_from_json(const Json & json)
{
  CostReport c;
  Reader r(json, "cost");
  r.get("J", c.J);
  r.get("S", c.S);
  r.get("v_coll", c.v_coll);
  r.get("ttc_min", c.ttc_min);
  r.get("collided", c.collided);
  r.get("at_time", c.at_time);
  r.get("no_projection", c.no_projection);
  r.get("ego", c.ego);
  if (const Json * o = r.find("other"); o && !o->is_null()) {
    c.other = o->get<int>();
  }
  r.finish();
  return c;
}

Json state_to_json(const SimState & s)
{
  Json j;
  j["clock"] = s.clock;
  j["tick"] = s.tick;
  j["vehicles"] = Json::array();
  for (const auto & k : s.vehicles) {
    j["vehicles"].push_back(Json::array({k.x, k.y, k.theta, k.v, k.steer, k.wrecked}));
  }
  j["controllers"] = Json::array();
  for (const auto & c : s.controllers) {
    Json jc;
    if (const auto * e = std::get_if<EgoControllerState>(&c)) {
      jc["kind"] = "ego";
      jc["mode"] = enum_name(kModes, e->mode);
      jc["risk_seen"] = e->risk_seen;
      jc["last_risk_time"] = e->last_risk_time;
      jc["maneuver_zone"] = e->maneuver_zone ? Json(enum_name(kZones, *e->maneuver_zone)) : Json(nullptr);
      jc["lane_center_y"] = e->lane_center_y;
    } else if (const auto * a = std::get_if<AgentControllerState>(&c)) {
      jc["kind"] = "tracker";
      jc["waypoint_index"] = a->waypoint_index;
    } else {
      jc["kind"] = "none";
    }
    j["controllers"].push_back(jc);
  }
  j["collisions"] = Json::array();
  for (const auto & c : s.collisions) {
    j["collisions"].push_back(
      {{"time", c.time},
       {"vehicle_a", c.vehicle_a},
       {"vehicle_b", c.vehicle_b},
       {"relative_speed", c.relative_speed},
       {"surface_ratio", c.surface_ratio},
       {"side", enum_name(kSides, c.side)}});
  }
  return j;
}

SimState state_from_json(const Json & json)
{
  SimState s;
  try {
    s.clock = json.at("clock").get<double>();
    s.tick = json.at("tick").get<std::int64_t>();
    for (const auto & v : json.at("vehicles")) {
      s.vehicles.push_back(
        {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>(), v.at(3).get<double>(),
         v.at(4).get<double>(), v.at(5).get<bool>()});
    }
    for (const auto & c : json.at("controllers")) {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "ego") {
        EgoControllerState e;
        e.mode = enum_value(kModes, c.at("mode").get<std::string>(), "controller.mode");
        e.risk_seen = c.at("risk_seen").get<bool>();
        e.last_risk_time = c.at("last_risk_time").get<double>();
        if (!c.at("maneuver_zone").is_null()) {
          e.maneuver_zone = enum_value(kZones, c.at("maneuver_zone").get<std::string>(), "controller.zone");
        }
        e.lane_center_y = c.at("lane_center_y").get<double>();
        s.controllers.emplace_back(e);
      } else if (kind == "tracker") {
        s.controllers.emplace_back(AgentControllerState{c.at("waypoint_index").get<std::size_t>()});
      } else {
        s.controllers.emplace_back(std::monostate{});
      }
    }
    for (const auto & c : json.at("collisions")) {
      CollisionEvent ev;
      ev.time = c.at("time").get<double>();
      ev.vehicle_a = c.at("vehicle_a").get<int>();
      ev.vehicle_b = c.at("vehicle_b").get<int>();
      ev.relative_speed = c.at("relative_speed").get<double>();
      ev.surface_ratio = c.at("surface_ratio").get<double>();
      ev.side = enum_value(kSides, c.at("side").get<std::string>(), "collision.side");
      s.collisions.push_back(ev);
    }
  } catch (const Json::exception & e) {
    throw ConfigError(std::string("malformed state: ") + e.what());
  }
  return s;
}

Json segments_to_json(const SegmentSet & segments)
{
  Json j = Json::array();
  for (const auto & seg : segments) {
    Json js = Json::array();
    for (const Waypoint & w : seg.waypoints) {
      js.push_back(Json::array({w.x, w.y, w.theta, w.v}));
    }
    j.push_back(js);
  }
  return j;
}

SegmentSet segments_from_json(const Json & json)
{
  SegmentSet out;
  try {
    for (const auto & js : json) {
      TargetPathSegment seg;
      for (const auto & w : js) {
        seg.waypoints.push_back(
          {w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>(), w.at(3).get<double>()});
      }
      out.push_back(seg);
    }
  } catch (const Json::exception & e) {
    throw ConfigError(std::string("malformed segments: ") + e.what());
  }
  return out;
}

Json tree_to_json(const SearchTree & tree, const ScenarioConfig & config)
{
  Json j;
  j["config"] = config_to_json(config);
  j["nodes"] = Json::array();
  for (const TreeNode & n : tree.nodes()) {
    Json jn;
    jn["id"] = n.id;
    jn["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    jn["sim_time"] = n.sim_time;
    jn["cost"] = cost_to_json(n.cost);
    jn["segments"] = segments_to_json(n.segment_used);
    jn["state"] = state_to_json(n.state);
    j["nodes"].push_back(jn);
  }
  return j;
}

SearchTree tree_from_json(const Json & json, ScenarioConfig & config)
{
  if (!json.is_object() || !json.contains("config") || !json.contains("nodes")) {
    throw ConfigError("tree file needs \"config\" and \"nodes\"");
  }
  config = config_from_json(json.at("config"));
  validate(config);
  SearchTree tree;
  try {
    for (const auto & jn : json.at("nodes")) {
      TreeNode n;
      if (!jn.at("parent").is_null()) {
        n.parent = jn.at("parent").get<int>();
      }
      n.sim_time = jn.at("sim_time").get<double>();
      n.cost = cost_from_json(jn.at("cost"));
      n.segment_used = segments_from_json(jn.at("segments"));
      n.state = state_from_json(jn.at("state"));
      tree.add(std::move(n));
    }
  } catch (const Json::exception & e) {
    throw ConfigError(std::string("malformed tree: ") + e.what());
  } catch (const std::invalid_argument & e) {
    throw ConfigError(std::string("malformed tree: ") + e.what());
  }
  return tree;
}

void write_tree_edges_csv(std::ostream & out, const SearchTree & tree)
{
  out << "id,parent,sim_time,cost\n";
  for (const TreeNode & n : tree.nodes()) {
    out << n.id << ',' << (n.parent ? *n.parent : -1) << ',' << format_double(n.sim_time) << ','
        << format_double(n.cost.J) << '\n';
  }
}

}  // namespace brrt
