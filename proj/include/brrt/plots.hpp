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

#ifndef BRRT__PLOTS_HPP_
#define BRRT__PLOTS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "brrt/experiment.hpp"
#include "brrt/scenario.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

struct BoxSeries
{
  std::string label;
  std::vector<double> values;
  /// Optional (min, mean, max) drawn as dashed reference ticks.
  std::optional<std::array<double, 3>> reference;
};

/// Box-and-whisker chart, one box per series, mean shown as a diamond.
std::string box_svg(const std::vector<BoxSeries> & series, const std::string & title);

BoxSeries series_from_report(const BatchReport & report);

/// Road lanes plus each vehicle's path with footprints numbered at every
/// multiple of `label_interval` seconds.
std::string trajectory_svg(
  const TraceTable & trace, const RoadSpec & road, double label_interval, const std::string & title);

/// Table view of an in-memory trace (same content as the CSV round trip).
TraceTable to_table(const TraceSegment & trace, const ScenarioConfig & config);

}  // namespace brrt

#endif  // BRRT__PLOTS_HPP_
