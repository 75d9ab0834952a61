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

#ifndef BRRT__PRESETS_HPP_
#define BRRT__PRESETS_HPP_

#include "brrt/scenario.hpp"

namespace brrt
{

/// Open three-lane road: one Ego, two move-to-pose agents approaching from behind.
ScenarioConfig case1_config();

/// Four lanes: a column of three constant-speed agents separates the Ego from
/// the single move-to-pose adversary.
ScenarioConfig case2_config();

/// The configuration used when none is given (case 1).
ScenarioConfig default_config();

}  // namespace brrt

#endif  // BRRT__PRESETS_HPP_
