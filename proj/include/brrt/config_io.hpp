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

#ifndef BRRT__CONFIG_IO_HPP_
#define BRRT__CONFIG_IO_HPP_

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "brrt/cost.hpp"
#include "brrt/rrt.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

using Json = nlohmann::ordered_json;

/// Scenario JSON mirrors ScenarioConfig field for field. Missing keys keep
/// their defaults; unknown keys and type mismatches raise ConfigError.
Json config_to_json(const ScenarioConfig & config);
ScenarioConfig config_from_json(const Json & json);

/// Parses and validates a scenario file.
ScenarioConfig load_config(const std::string & path);
std::string dump_config(const ScenarioConfig & config);

Json cost_to_json(const CostReport & cost);
CostReport cost_from_json(const Json & json);

Json state_to_json(const SimState & state);
SimState state_from_json(const Json & json);

Json segments_to_json(const SegmentSet & segments);
SegmentSet segments_from_json(const Json & json);

/// Tree sidecar: config, then every node with parent, time, cost, edge
/// segments and end state. Enough to replay any node.
Json tree_to_json(const SearchTree & tree, const ScenarioConfig & config);
SearchTree tree_from_json(const Json & json, ScenarioConfig & config);

/// Edge list: id,parent,sim_time,cost (root parent is -1).
void write_tree_edges_csv(std::ostream & out, const SearchTree & tree);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::string & path);
void write_file(const std::string & path, const std::string & contents);

}  // namespace brrt

#endif  // BRRT__CONFIG_IO_HPP_
