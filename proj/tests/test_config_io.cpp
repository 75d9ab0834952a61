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

#include <cmath>
#include <numbers>
#include <sstream>

#include "brrt/config_io.hpp"
#include "brrt/errors.hpp"
#include "brrt/presets.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{
namespace
{

const std::string kSource = BRRT_SOURCE_DIR;
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

struct Constant
{
  const char * file;
  const char * pointer;
  double value;
};

// Scenario numbers for the two case-study presets.
const Constant kConstants[] = {
  {"case1", "/road/lane_count", 3},
  {"case1", "/road/lane_width", 3.5},
  {"case1", "/init_sampling/1/x/0", 0},
  {"case1", "/init_sampling/1/x/1", 25},
  {"case1", "/init_sampling/2/x/0", 10},
  {"case1", "/init_sampling/2/x/1", 20},
  {"case1", "/init_sampling/0/x/0", 30},
  {"case1", "/init_sampling/0/x/1", 50},
  {"case1", "/init_sampling/1/y/0", -3.5},
  {"case1", "/init_sampling/1/y/1", 3.5},
  {"case1", "/init_sampling/2/y/0", -3.5},
  {"case1", "/init_sampling/2/y/1", 3.5},
  {"case1", "/init_sampling/0/y/0", -1.75},
  {"case1", "/init_sampling/0/y/1", 1.75},
  {"case1", "/init_sampling/0/theta/0", -kPi / 8},
  {"case1", "/init_sampling/0/theta/1", kPi / 8},
  {"case1", "/init_sampling/0/v/0", 10},
  {"case1", "/init_sampling/0/v/1", 15},
  {"case1", "/ego_specs/0/controller_params/target_speed", 15},
  {"case1", "/init_sampling/1/v/0", 0},
  {"case1", "/init_sampling/1/v/1", 15},
  {"case1", "/init_sampling/2/v/0", 0},
  {"case1", "/init_sampling/2/v/1", 15},
  {"case1", "/waypoint_space/v/0", 0},
  {"case1", "/waypoint_space/v/1", 30},
  {"case1", "/ego_specs/0/sensors/0/fov", 45 * kDeg},
  {"case1", "/ego_specs/0/sensors/0/range", 60},
  {"case1", "/ego_specs/0/sensors/1/fov", 90 * kDeg},
  {"case1", "/ego_specs/0/sensors/1/range", 10},
  {"case1", "/ego_specs/0/sensors/2/fov", 90 * kDeg},
  {"case1", "/ego_specs/0/sensors/2/range", 10},
  {"case1", "/ego_specs/0/sensors/3/fov", 90 * kDeg},
  {"case1", "/ego_specs/0/sensors/3/range", 10},
  {"case1", "/ego_specs/0/sensors/4/fov", 90 * kDeg},
  {"case1", "/ego_specs/0/sensors/4/range", 10},
  {"case1", "/search_params/n_candidates", 5},
  {"case1", "/search_params/delta_t", 1},
  {"case1", "/search_params/max_reject", 10},
  {"case1", "/search_params/max_fails", 10},
  {"case1", "/search_params/alpha", 2},
  {"case1", "/sim_params/dt_sim", 0.01},
  {"case2", "/init_sampling/1/y/0", 1.25},
  {"case2", "/init_sampling/1/y/1", 6},
  {"case2", "/init_sampling/2/y/0", -2.25},
  {"case2", "/init_sampling/2/y/1", -1.75},
  {"case2", "/init_sampling/3/y/0", -2.25},
  {"case2", "/init_sampling/3/y/1", -1.75},
  {"case2", "/init_sampling/4/y/0", -2.25},
  {"case2", "/init_sampling/4/y/1", -1.75},
  {"case2", "/init_sampling/1/v/0", 5},
  {"case2", "/init_sampling/1/v/1", 15},
  {"case2", "/waypoint_space/v/0", 0},
  {"case2", "/waypoint_space/v/1", 30},
  {"case2", "/init_sampling/0/v/0", 15},
  {"case2", "/init_sampling/0/v/1", 15},
  {"case2", "/init_sampling/2/v/0", 15},
  {"case2", "/init_sampling/3/v/1", 15},
  {"case2", "/init_sampling/4/v/1", 15},
  {"case2", "/ego_specs/0/sensors/0/fov", 22.5 * kDeg},
  {"case2", "/ego_specs/0/sensors/0/range", 50},
  {"case2", "/ego_specs/0/sensors/1/fov", 90 * kDeg},
  {"case2", "/ego_specs/0/sensors/1/range", 5},
  {"case2", "/ego_specs/0/sensors/2/range", 5},
  {"case2", "/ego_specs/0/sensors/3/fov", 90 * kDeg},
  {"case2", "/ego_specs/0/sensors/3/range", 7},
  {"case2", "/ego_specs/0/sensors/4/range", 7},
};

Json load_preset_file(const std::string & name)
{
  return Json::parse(read_file(kSource + "/configs/" + name + ".json"));
}

TEST(Presets, CheckedInFilesMatchConstantsTable)
{
  for (const Constant & c : kConstants) {
    const Json j = load_preset_file(c.file);
    EXPECT_NEAR(j.at(Json::json_pointer(c.pointer)).get<double>(), c.value, 1e-12) << c.file << c.pointer;
  }
}

TEST(Presets, RoleLayout)
{
  const Json c1 = load_preset_file("case1");
  EXPECT_EQ(c1.at("ego_specs").size(), 1u);
  EXPECT_EQ(c1.at("agent_specs").size(), 2u);
  for (const auto & a : c1.at("agent_specs")) {
    EXPECT_EQ(a.at("role"), "agent_tracked");
  }
  const Json c2 = load_preset_file("case2");
  EXPECT_EQ(c2.at("agent_specs").size(), 4u);
  EXPECT_EQ(c2.at("agent_specs")[0].at("role"), "agent_tracked");
  for (int i = 1; i < 4; ++i) {
    EXPECT_EQ(c2.at("agent_specs")[i].at("role"), "agent_constant");
  }
  for (const Json * j : {&c1, &c2}) {
    const auto & s = j->at("ego_specs")[0].at("sensors");
    ASSERT_EQ(s.size(), 5u);
    EXPECT_EQ(s[0].at("zone"), "front");
    EXPECT_EQ(s[1].at("zone"), "left");
    EXPECT_EQ(s[2].at("zone"), "right");
    EXPECT_EQ(s[3].at("zone"), "rear_left");
    EXPECT_EQ(s[4].at("zone"), "rear_right");
  }
}

TEST(Presets, FilesEqualBuiltIns)
{
  EXPECT_EQ(load_config(kSource + "/configs/case1.json"), case1_config());
  EXPECT_EQ(load_config(kSource + "/configs/case2.json"), case2_config());
}

TEST(ConfigJson, RoundTrip)
{
  for (const ScenarioConfig & c : {case1_config(), case2_config()}) {
    const Json j = config_to_json(c);
    EXPECT_EQ(config_from_json(j), c);
    EXPECT_EQ(config_from_json(Json::parse(dump_config(c))), c);
    EXPECT_EQ(dump_config(config_from_json(j)), dump_config(c));
  }
}

TEST(ConfigJson, MissingKeysKeepDefaults)
{
  Json j = config_to_json(case1_config());
  j.erase("rng_seed");
  j["search_params"].erase("max_reject");
  const ScenarioConfig c = config_from_json(j);
  EXPECT_EQ(c.rng_seed, ScenarioConfig{}.rng_seed);
  EXPECT_EQ(c.search_params.max_reject, SearchParams{}.max_reject);
}

TEST(ConfigJson, UnknownKeysRejected)
{
  Json j = config_to_json(case1_config());
  j["bogus"] = 1;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(case1_config());
  j["search_params"]["n_cand"] = 3;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(case1_config());
  j["ego_specs"][0]["sensors"][0]["colour"] = "red";
  EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(ConfigJson, TypeErrorsRejected)
{
  Json j = config_to_json(case1_config());
  j["search_params"]["n_candidates"] = "five";
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(case1_config());
  j["road"] = 3;
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(case1_config());
  j["init_sampling"][0]["x"] = Json::array({1.0});
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = config_to_json(case1_config());
  j["agent_specs"][0]["role"] = "pilot";
  EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(ConfigJson, LoadValidates)
{
  const std::string path = testing::TempDir() + "/bad_config.json";
  Json j = config_to_json(case1_config());
  j["sim_params"]["dt_sim"] = -0.01;
  write_file(path, j.dump());
  EXPECT_THROW(load_config(path), ConfigError);
  write_file(path, "{ not json");
  EXPECT_THROW(load_config(path), std::exception);
  EXPECT_THROW(read_file(path + ".missing"), std::runtime_error);
}

TEST(StateJson, RoundTripIsExact)
{
  const ScenarioConfig c = case1_config();
  RandomSource rng(1);
  const SimState s0 = sample_initial_states(c, rng);
  const SegmentSet segs = sample_segments(c, rng);
  const TraceSegment t = run_partial(s0, segs, c, 2.0);
  const SimState & s = t.final_state();
  EXPECT_EQ(state_from_json(Json::parse(state_to_json(s).dump())), s);
  EXPECT_EQ(segments_from_json(Json::parse(segments_to_json(segs).dump())), segs);
  // Resuming from a reloaded snapshot continues identically.
  const SimState back = state_from_json(Json::parse(state_to_json(s).dump()));
  EXPECT_EQ(run_partial(back, segs, c, 1.0).states, run_partial(s, segs, c, 1.0).states);
}

TEST(CostJson, InfinityAsNull)
{
  CostReport r;
  r.J = 7401.0;
  r.ttc_min = INFINITY;
  r.no_projection = true;
  const Json j = cost_to_json(r);
  EXPECT_TRUE(j.at("ttc_min").is_null());
  const CostReport back = cost_from_json(Json::parse(j.dump()));
  EXPECT_TRUE(std::isinf(back.ttc_min));
  EXPECT_EQ(back.J, 7401.0);
  EXPECT_TRUE(back.no_projection);
}

TEST(TreeJson, RoundTripAndEdgeList)
{
  ScenarioConfig c = case1_config();
  c.search_params.max_iterations = 20;
  const SearchResult r = search(c, 3, EngineOverrides{true, true});
  ScenarioConfig loaded;
  const SearchTree t = tree_from_json(Json::parse(tree_to_json(r.tree, c).dump()), loaded);
  EXPECT_EQ(loaded, c);
  ASSERT_EQ(t.size(), r.tree.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.nodes()[i].state, r.tree.nodes()[i].state);
    EXPECT_EQ(t.nodes()[i].parent, r.tree.nodes()[i].parent);
    EXPECT_EQ(t.nodes()[i].segment_used, r.tree.nodes()[i].segment_used);
  }
  EXPECT_EQ(t.best_node_id(), r.tree.best_node_id());

  std::ostringstream csv;
  write_tree_edges_csv(csv, r.tree);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "id,parent,sim_time,cost");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,-1,", 0), 0u);
  int rows = 1;
  while (std::getline(in, line)) {
    ++rows;
  }
  EXPECT_EQ(rows, static_cast<int>(r.tree.size()));
}

}  // namespace
}  // namespace brrt
