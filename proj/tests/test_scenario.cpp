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

#include "brrt/errors.hpp"
#include "brrt/geometry.hpp"
#include "brrt/presets.hpp"
#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"
#include "test_util.hpp"

namespace brrt
{
namespace
{

using std::numbers::pi;

const IntervalBox kBox{{0.0, 100.0}, {-3.5, 3.5}, {-pi / 2, pi / 2}, {0.0, 30.0}};

TEST(SampleInitialStates, CaseOneEgoLiesInItsBox)
{
  const ScenarioConfig c = case1_config();
  RandomSource rng(3);
  for (int i = 0; i < 200; ++i) {
    const SimState s = sample_initial_states(c, rng);
    const auto & e = s.vehicles[0];
    EXPECT_TRUE((Interval{30.0, 50.0}).contains(e.x));
    EXPECT_TRUE((Interval{-1.75, 1.75}).contains(e.y));
    EXPECT_TRUE((Interval{-pi / 8, pi / 8}).contains(e.theta));
    EXPECT_TRUE((Interval{10.0, 15.0}).contains(e.v));
    EXPECT_EQ(s.clock, 0.0);
    EXPECT_EQ(s.tick, 0);
    EXPECT_TRUE(s.collisions.empty());
  }
}

TEST(SampleInitialStates, DegenerateBoxesAreDeterministic)
{
  const ScenarioConfig c = test::bare_config(
    test::ks(10.0, 0.0, 0.0, 12.0), {{Role::kAgentTracked, test::ks(40.0, 3.5, 0.1, 5.0)}});
  RandomSource rng(99);
  const SimState s = sample_initial_states(c, rng);
  EXPECT_EQ(s.vehicles[0], test::ks(10.0, 0.0, 0.0, 12.0));
  EXPECT_EQ(s.vehicles[1], test::ks(40.0, 3.5, 0.1, 5.0));
}

TEST(SampleInitialStates, ControllerStatesStartAtReset)
{
  ScenarioConfig c = case2_config();
  RandomSource rng(1);
  const SimState s = sample_initial_states(c, rng);
  ASSERT_EQ(s.controllers.size(), 5u);
  const auto * ego = std::get_if<EgoControllerState>(&s.controllers[0]);
  ASSERT_NE(ego, nullptr);
  EXPECT_EQ(ego->mode, EgoMode::kNormal);
  EXPECT_FALSE(ego->risk_seen);
  EXPECT_EQ(std::get<AgentControllerState>(s.controllers[1]).waypoint_index, 0u);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(s.controllers[2]));
}

TEST(SampleInitialStates, SameSeedSameScene)
{
  const ScenarioConfig c = case1_config();
  RandomSource a(42);
  RandomSource b(42);
  EXPECT_EQ(sample_initial_states(c, a), sample_initial_states(c, b));
}

TEST(SampleInitialStates, FootprintsNeverOverlap)
{
  const ScenarioConfig c = case1_config();
  RandomSource rng(7);
  for (int n = 0; n < 300; ++n) {
    const SimState s = sample_initial_states(c, rng);
    for (int i = 0; i < c.vehicle_count(); ++i) {
      for (int j = i + 1; j < c.vehicle_count(); ++j) {
        const auto & a = s.vehicles[i];
        const auto & b = s.vehicles[j];
        EXPECT_FALSE(rects_overlap(
          {{a.x, a.y}, a.theta, c.spec(i).length, c.spec(i).width},
          {{b.x, b.y}, b.theta, c.spec(j).length, c.spec(j).width}));
      }
    }
  }
}

TEST(SampleWaypoint, FieldsInRange)
{
  RandomSource rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Waypoint w = sample_waypoint(kBox, rng);
    EXPECT_TRUE(kBox.x.contains(w.x));
    EXPECT_TRUE(kBox.y.contains(w.y));
    EXPECT_TRUE(kBox.theta.contains(w.theta));
    EXPECT_TRUE(kBox.v.contains(w.v));
  }
}

TEST(SampleWaypoint, PointBoxIsExact)
{
  RandomSource rng(5);
  EXPECT_EQ(sample_waypoint(test::point_box(10.0, 0.0, 0.0, 15.0), rng), (Waypoint{10.0, 0.0, 0.0, 15.0}));
}

TEST(SampleWaypoint, MeansMatchUniformMoments)
{
  RandomSource rng(2024);
  const int n = 10000;
  double sx = 0;
  double sy = 0;
  double st = 0;
  double sv = 0;
  for (int i = 0; i < n; ++i) {
    const Waypoint w = sample_waypoint(kBox, rng);
    sx += w.x;
    sy += w.y;
    st += w.theta;
    sv += w.v;
  }
  const auto check = [n](double sum, const Interval & iv) {
    const double se = iv.width() / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(sum / n, 0.5 * (iv.lo + iv.hi), 3.0 * se);
  };
  check(sx, kBox.x);
  check(sy, kBox.y);
  check(st, kBox.theta);
  check(sv, kBox.v);
}

TEST(BuildPathSegment, InteriorStraightLeg)
{
  const auto seg = build_path_segment({50.0, 0.0, 0.0, 15.0}, 10.0, kBox);
  ASSERT_EQ(seg.waypoints.size(), 2u);
  EXPECT_EQ(seg.waypoints[0], (Waypoint{50.0, 0.0, 0.0, 15.0}));
  EXPECT_EQ(seg.waypoints[1], (Waypoint{60.0, 0.0, 0.0, 15.0}));
}

TEST(BuildPathSegment, BreaksAtEndWallAndTruncatesAtCorner)
{
  const auto seg = build_path_segment({95.0, 0.0, 0.0, 15.0}, 10.0, kBox);
  ASSERT_EQ(seg.waypoints.size(), 3u);
  EXPECT_NEAR(seg.waypoints[1].x, 100.0, 1e-12);
  EXPECT_NEAR(seg.waypoints[1].y, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(seg.waypoints[1].theta, pi / 2);
  EXPECT_NEAR(seg.waypoints[2].x, 100.0, 1e-12);
  EXPECT_NEAR(seg.waypoints[2].y, 3.5, 1e-12);
  EXPECT_DOUBLE_EQ(seg.waypoints[2].theta, pi / 2);
  EXPECT_EQ(seg.waypoints[2].v, 15.0);
  EXPECT_NEAR(seg.length(), 8.5, 1e-9);
}

TEST(BuildPathSegment, BreaksAtSideWall)
{
  const auto seg = build_path_segment({50.0, 3.0, pi / 4, 20.0}, 2.0, kBox);
  ASSERT_EQ(seg.waypoints.size(), 3u);
  const double leg1 = 0.5 / std::sin(pi / 4);
  EXPECT_NEAR(seg.waypoints[1].x, 50.0 + 0.5, 1e-12);
  EXPECT_NEAR(seg.waypoints[1].y, 3.5, 1e-12);
  EXPECT_DOUBLE_EQ(seg.waypoints[1].theta, 0.0);
  EXPECT_NEAR(seg.waypoints[2].x, 50.5 + (2.0 - leg1), 1e-12);
  EXPECT_NEAR(seg.waypoints[2].y, 3.5, 1e-12);
  EXPECT_NEAR(seg.length(), 2.0, 1e-9);
}

TEST(BuildPathSegment, ExactTieTurnsCounterClockwise)
{
  // Straight into the top wall: 0 and pi are equally close; positive rotation picks pi.
  const auto seg = build_path_segment({50.0, 3.0, pi / 2, 10.0}, 2.0, kBox);
  ASSERT_EQ(seg.waypoints.size(), 3u);
  EXPECT_DOUBLE_EQ(seg.waypoints[1].theta, pi);
  EXPECT_NEAR(seg.waypoints[2].x, 48.5, 1e-12);
}

TEST(BuildPathSegment, RejectsNonPositiveLength)
{
  EXPECT_THROW(build_path_segment({50.0, 0.0, 0.0, 15.0}, 0.0, kBox), GeometryError);
  EXPECT_THROW(build_path_segment({50.0, 0.0, 0.0, 15.0}, -1.0, kBox), GeometryError);
}

TEST(BuildPathSegment, RandomSegmentsStayInsideWithExactLength)
{
  RandomSource rng(77);
  const IntervalBox space{{0.0, 100.0}, {-3.5, 3.5}, {-pi, pi}, {0.0, 30.0}};
  int truncated = 0;
  int broken = 0;
  for (int i = 0; i < 5000; ++i) {
    const Waypoint w = sample_waypoint(space, rng);
    const double d = rng.uniform(0.1, 40.0);
    TargetPathSegment seg;
    try {
      seg = build_path_segment(w, d, space);
    } catch (const GeometryError &) {
      // Only a corner start facing out of the box has no admissible leg.
      continue;
    }
    ASSERT_GE(seg.waypoints.size(), 2u);
    ASSERT_LE(seg.waypoints.size(), 3u);
    for (std::size_t k = 0; k < seg.waypoints.size(); ++k) {
      const auto & p = seg.waypoints[k];
      EXPECT_TRUE(space.x.contains(p.x, 1e-9) && space.y.contains(p.y, 1e-9));
      EXPECT_GT(p.theta, -pi);
      EXPECT_LE(p.theta, pi);
      if (k > 0) {
        const auto & q = seg.waypoints[k - 1];
        EXPECT_GT(std::hypot(p.x - q.x, p.y - q.y), 0.0);
      }
    }
    broken += seg.waypoints.size() == 3;
    const double len = seg.length();
    if (std::abs(len - d) > 1e-9) {
      ++truncated;
      EXPECT_LT(len, d);
      const auto & last = seg.waypoints.back();
      const bool corner_x = std::abs(last.x - space.x.lo) < 1e-9 || std::abs(last.x - space.x.hi) < 1e-9;
      const bool corner_y = std::abs(last.y - space.y.lo) < 1e-9 || std::abs(last.y - space.y.hi) < 1e-9;
      EXPECT_TRUE(corner_x && corner_y);
    }
  }
  EXPECT_GT(broken, 100);
  EXPECT_GT(truncated, 10);
}

TEST(Validate, RejectsInvertedIntervalAndBadCounts)
{
  ScenarioConfig c = case1_config();
  EXPECT_NO_THROW(validate(c));
  ScenarioConfig bad = c;
  bad.init_sampling[0].x = {50.0, 30.0};
  EXPECT_THROW(validate(bad), ConfigError);
  bad = c;
  bad.d_leg = 0.0;
  EXPECT_THROW(validate(bad), ConfigError);
  bad = c;
  bad.search_params.n_candidates = 0;
  EXPECT_THROW(validate(bad), ConfigError);
  bad = c;
  bad.agent_specs.clear();
  bad.init_sampling.resize(1);
  EXPECT_THROW(validate(bad), ConfigError);
  bad = c;
  bad.ego_specs[0].wheelbase = bad.ego_specs[0].length + 0.1;
  EXPECT_THROW(validate(bad), ConfigError);
}

TEST(Validate, ConstantAgentsCarryNoSensors)
{
  ScenarioConfig c = case2_config();
  c.agent_specs[1].sensors = c.ego_specs[0].sensors;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Road, LaneCentersAndNearestLane)
{
  const RoadSpec r = case1_config().road;
  EXPECT_DOUBLE_EQ(r.lane_center(0), -3.5);
  EXPECT_DOUBLE_EQ(r.lane_center(1), 0.0);
  EXPECT_DOUBLE_EQ(r.lane_center(2), 3.5);
  EXPECT_EQ(r.nearest_lane(0.3), 1);
  EXPECT_EQ(r.nearest_lane(-9.0), 0);
  EXPECT_EQ(r.nearest_lane(9.0), 2);
}

}  // namespace
}  // namespace brrt
