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

#ifndef BRRT__RRT_HPP_
#define BRRT__RRT_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "brrt/cost.hpp"
#include "brrt/novelty.hpp"
#include "brrt/random.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"
#include "brrt/transition.hpp"

namespace brrt
{

struct TreeNode
{
  int id{0};
  std::optional<int> parent;
  /// Snapshot at the end of the edge; holds the controller states too.
  SimState state;
  /// Partial trace of the edge, kept only when histories are stored.
  std::optional<TraceSegment> history;
  double sim_time{0.0};
  CostReport cost;
  /// Agent target paths used on the edge into this node.
  SegmentSet segment_used;

  /// Nodes that end in an Ego collision are never expanded.
  bool terminal(const ScenarioConfig & config) const { return state.any_ego_collision(config); }
};

/// Append-only tree; parents always precede their children.
class SearchTree
{
public:
  int add(TreeNode node);
  const TreeNode & node(int id) const;
  const std::vector<TreeNode> & nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int best_node_id() const { return best_; }
  const TreeNode & best() const { return nodes_.at(best_); }
  /// Node ids from the root down to `id`.
  std::vector<int> path_to(int id) const;

private:
  std::vector<TreeNode> nodes_;
  int best_{0};
};

/// Non-terminal nodes where every tracked agent is strictly behind the first
/// waypoint of its new segment, ranked by the summed agent-to-waypoint
/// distance (ties to the lower id); at most `n` ids.
std::vector<int> select_candidates(
  const SearchTree & tree, const SegmentSet & segments, int n, const ScenarioConfig & config);

enum class ExpandOutcome { kAdded, kRejectedTransition, kRejectedNovelty, kNoCandidates };
const char * to_string(ExpandOutcome outcome);

/// Test hooks that bypass the acceptance tests.
struct EngineOverrides
{
  bool always_accept_transition{false};
  bool always_accept_novelty{false};
};

/// Mutable search state owned by one search loop.
struct SearchContext
{
  const ScenarioConfig & config;
  RandomSource rng;
  TransitionState transition;
  NoveltyState novelty;
  EngineOverrides overrides;
  /// Simulated seconds spent on partial simulations so far.
  double sim_seconds{0.0};

  SearchContext(const ScenarioConfig & cfg, std::uint64_t seed, EngineOverrides ov = {});
};

struct IterationRecord
{
  int iteration{0};
  ExpandOutcome outcome{ExpandOutcome::kNoCandidates};
  int candidates{0};
  std::optional<int> parent;
  std::optional<int> node;
  double c_prev{0.0};
  double c_cand{0.0};
  double eta{0.0};
  double temperature{0.0};
  double best_cost{0.0};
};

/// Simulates Δt from every candidate, keeps the cheapest result and adds it
/// when it passes the transition test and then the novelty test.
IterationRecord expand(SearchTree & tree, const SegmentSet & segments, SearchContext & ctx);

enum class Termination { kCostThreshold, kTimeBudget, kMaxNodes, kMaxIterations, kSimBudget };
const char * to_string(Termination reason);

struct SearchResult
{
  SearchTree tree;
  int best_node{0};
  CostReport best_cost;
  /// Root-to-best trajectory rebuilt by replay.
  TraceSegment best_trace;
  std::vector<IterationRecord> log;
  Termination reason{Termination::kMaxNodes};
  int iterations{0};
  double sim_seconds{0.0};
  double wall_seconds{0.0};
  std::uint64_t seed{0};
};

/// Full search from freshly sampled initial states. The seed defaults to
/// config.rng_seed.
SearchResult search(
  const ScenarioConfig & config, std::optional<std::uint64_t> seed = std::nullopt,
  EngineOverrides overrides = {});

/// Root-to-node trace obtained by re-running every edge from the root state
/// (or taken from the stored histories when present).
TraceSegment replay(const SearchTree & tree, int node_id, const ScenarioConfig & config);

}  // namespace brrt

#endif  // BRRT__RRT_HPP_
