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

#include <algorithm>
#include <cmath>

#include "brrt/presets.hpp"
#include "brrt/rrt.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{
namespace
{

ScenarioConfig small_config(int max_iterations)
{
  ScenarioConfig c = case1_config();
  c.search_params.time_budget = 1e6;
  c.search_params.max_iterations = max_iterations;
  c.search_params.sim_budget = 0.0;
  c.search_params.max_nodes = 0;
  return c;
}

// Tree whose nodes put the first tracked agent `d` metres behind a waypoint.
struct Fixture
{
  ScenarioConfig config = case1_config();
  SearchTree tree;
  SegmentSet segments;
  int agent{0};

  explicit Fixture(const std::vector<double> & gaps)
  {
    RandomSource rng(1);
    const SimState base = sample_initial_states(config, rng);
    agent = config.tracked_agent_ids().front();
    segments.assign(base.vehicles.size(), TargetPathSegment{});
    segments[agent].waypoints.push_back(Waypoint{100.0, 0.0, 0.0, 10.0});
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      TreeNode n;
      if (i > 0) {
        n.parent = 0;
      }
      n.state = base;
      n.state.vehicles[agent].x = 100.0 - gaps[i];
      n.state.vehicles[agent].y = 0.0;
      n.cost.J = 100.0;
      tree.add(n);
    }
  }
};

TEST(SelectCandidates, RanksBySummedDistance)
{
  Fixture f({5.0, 2.0, 9.0});
  EXPECT_EQ(select_candidates(f.tree, f.segments, 2, f.config), (std::vector<int>{1, 0}));
  EXPECT_EQ(select_candidates(f.tree, f.segments, 5, f.config), (std::vector<int>{1, 0, 2}));
}

TEST(SelectCandidates, BehindIsStrict)
{
  Fixture f({0.0, -3.0, 4.0});
  EXPECT_EQ(select_candidates(f.tree, f.segments, 5, f.config), (std::vector<int>{2}));
}

TEST(SelectCandidates, EmptyWhenNoNodeQualifies)
{
  Fixture f({-1.0, -2.0});
  EXPECT_TRUE(select_candidates(f.tree, f.segments, 5, f.config).empty());
  SearchContext ctx(f.config, 3);
  const IterationRecord rec = expand(f.tree, f.segments, ctx);
  EXPECT_EQ(rec.outcome, ExpandOutcome::kNoCandidates);
  EXPECT_EQ(f.tree.size(), 2u);
}

TEST(SelectCandidates, TiesGoToLowerId)
{
  Fixture f({3.0, 3.0, 3.0});
  EXPECT_EQ(select_candidates(f.tree, f.segments, 2, f.config), (std::vector<int>{0, 1}));
}

TEST(SelectCandidates, SkipsTerminalNodes)
{
  Fixture f({5.0, 2.0});
  TreeNode wreck = f.tree.node(1);
  wreck.parent = 0;
  wreck.state.collisions.push_back(CollisionEvent{0.5, f.config.ego_ids().front(), f.agent, 1.0, 0.5});
  f.tree.add(wreck);
  EXPECT_EQ(select_candidates(f.tree, f.segments, 5, f.config), (std::vector<int>{1, 0}));
}

TEST(Expand, AddsCheapestCandidateResult)
{
  Fixture f({5.0, 2.0, 9.0});
  f.config.search_params.n_candidates = 3;
  SearchContext ctx(f.config, 4, EngineOverrides{true, true});
  const IterationRecord rec = expand(f.tree, f.segments, ctx);
  ASSERT_EQ(rec.outcome, ExpandOutcome::kAdded);
  double best = INFINITY;
  int best_id = -1;
  for (const int id : {1, 0, 2}) {
    const double j = cost(run_partial(f.tree.node(id).state, f.segments, f.config, 1.0), f.config).J;
    if (j < best) {
      best = j;
      best_id = id;
    }
  }
  EXPECT_EQ(*rec.parent, best_id);
  EXPECT_EQ(rec.c_cand, best);
  EXPECT_EQ(f.tree.node(*rec.node).cost.J, best);
  EXPECT_EQ(f.tree.node(*rec.node).segment_used, f.segments);
  EXPECT_DOUBLE_EQ(ctx.sim_seconds, 3.0);
}

TEST(Search, MaxNodesOneReturnsRoot)
{
  ScenarioConfig c = small_config(0);
  c.search_params.max_nodes = 1;
  const SearchResult r = search(c, 5);
  EXPECT_EQ(r.tree.size(), 1u);
  EXPECT_EQ(r.best_node, 0);
  EXPECT_EQ(r.reason, Termination::kMaxNodes);
  EXPECT_TRUE(r.best_trace.states.empty());
  EXPECT_EQ(r.iterations, 0);
}

TEST(Search, CostThresholdStopsAtOnce)
{
  ScenarioConfig c = small_config(50);
  c.search_params.cost_threshold = 1e9;
  const SearchResult r = search(c, 5);
  EXPECT_EQ(r.reason, Termination::kCostThreshold);
  EXPECT_EQ(r.tree.size(), 1u);
}

TEST(Search, SimBudgetTerminates)
{
  ScenarioConfig c = small_config(0);
  c.search_params.sim_budget = 20.0;
  const SearchResult r = search(c, 6);
  EXPECT_EQ(r.reason, Termination::kSimBudget);
  EXPECT_GE(r.sim_seconds, 20.0);
  EXPECT_LT(r.sim_seconds, 20.0 + c.search_params.n_candidates * c.search_params.delta_t + 1e-9);
}

TEST(Search, DeterministicForFixedSeed)
{
  const ScenarioConfig c = small_config(40);
  const SearchResult a = search(c, 7);
  const SearchResult b = search(c, 7);
  ASSERT_EQ(a.tree.size(), b.tree.size());
  for (std::size_t i = 0; i < a.tree.size(); ++i) {
    EXPECT_EQ(a.tree.nodes()[i].state, b.tree.nodes()[i].state);
    EXPECT_EQ(a.tree.nodes()[i].cost.J, b.tree.nodes()[i].cost.J);
  }
  EXPECT_EQ(a.best_trace.states, b.best_trace.states);
}

TEST(Search, InvariantsHold)
{
  for (const std::uint64_t seed : {11u, 12u, 13u}) {
    const ScenarioConfig c = small_config(60);
    const SearchResult r = search(c, seed);
    EXPECT_EQ(r.iterations, 60);
    EXPECT_LE(r.tree.size(), static_cast<std::size_t>(r.iterations) + 1);
    double prev = r.tree.node(0).cost.J;
    for (const IterationRecord & rec : r.log) {
      EXPECT_LE(rec.best_cost, prev);
      prev = rec.best_cost;
      EXPECT_LE(rec.candidates, c.search_params.n_candidates);
    }
    double min_j = INFINITY;
    for (const TreeNode & n : r.tree.nodes()) {
      min_j = std::min(min_j, n.cost.J);
      if (n.parent) {
        EXPECT_LT(*n.parent, n.id);
        EXPECT_NEAR(n.sim_time, r.tree.node(*n.parent).sim_time + c.search_params.delta_t, 1e-9);
      }
    }
    EXPECT_EQ(r.best_cost.J, min_j);
    EXPECT_LE(r.tree.node(0).cost.J, 7401.0);
  }
}

TEST(Replay, RootIsEmptyAndDepthSetsDuration)
{
  ScenarioConfig c = small_config(80);
  const SearchResult r = search(c, 21, EngineOverrides{true, true});
  EXPECT_TRUE(replay(r.tree, 0, c).states.empty());
  bool found_depth3 = false;
  for (const TreeNode & n : r.tree.nodes()) {
    const std::size_t depth = r.tree.path_to(n.id).size() - 1;
    const TraceSegment t = replay(r.tree, n.id, c);
    EXPECT_NEAR(t.duration(), static_cast<double>(depth) * c.search_params.delta_t, 1e-9);
    found_depth3 = found_depth3 || depth == 3;
  }
  EXPECT_TRUE(found_depth3);
}

TEST(Replay, ReproducesStoredSnapshots)
{
  ScenarioConfig c = small_config(80);
  const SearchResult r = search(c, 22, EngineOverrides{true, true});
  ASSERT_GT(r.tree.size(), 10u);
  RandomSource rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int id = 1 + static_cast<int>(rng.uniform01() * static_cast<double>(r.tree.size() - 1));
    EXPECT_EQ(replay(r.tree, id, c).final_state(), r.tree.node(id).state) << "node " << id;
  }
}

TEST(Replay, StoredHistoriesMatchRerun)
{
  ScenarioConfig c = small_config(30);
  c.search_params.store_histories = true;
  const SearchResult r = search(c, 24, EngineOverrides{true, true});
  ScenarioConfig c2 = c;
  SearchTree stripped;
  for (TreeNode n : r.tree.nodes()) {
    n.history.reset();
    stripped.add(n);
  }
  for (const TreeNode & n : r.tree.nodes()) {
    EXPECT_EQ(replay(r.tree, n.id, c).states, replay(stripped, n.id, c2).states);
  }
}

TEST(Replay, UnknownNodeThrows)
{
  const ScenarioConfig c = small_config(1);
  const SearchResult r = search(c, 25);
  EXPECT_THROW(replay(r.tree, 999, c), std::out_of_range);
  EXPECT_THROW(r.tree.node(-1), std::out_of_range);
}

TEST(Search, OverridesGrowTreeEveryIteration)
{
  const ScenarioConfig c = small_config(25);
  const SearchResult r = search(c, 26, EngineOverrides{true, true});
  int added = 0;
  int none = 0;
  for (const IterationRecord & rec : r.log) {
    added += rec.outcome == ExpandOutcome::kAdded;
    none += rec.outcome == ExpandOutcome::kNoCandidates;
    EXPECT_NE(rec.outcome, ExpandOutcome::kRejectedTransition);
    EXPECT_NE(rec.outcome, ExpandOutcome::kRejectedNovelty);
  }
  EXPECT_EQ(added + none, 25);
  EXPECT_EQ(r.tree.size(), static_cast<std::size_t>(added) + 1);
}

}  // namespace
}  // namespace brrt
