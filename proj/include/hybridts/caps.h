// Copyright 2026 The hybridts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBRIDTS_CAPS_H
#define HYBRIDTS_CAPS_H

#include <cstdint>

namespace hybridts {

/// Largest simulated dimension: HYBRIDTS_DIM_CAP when set to a positive
/// integer, `default_cap` otherwise.
std::int64_t dimension_cap(std::int64_t default_cap);

/// Default vertex-space cap for the walk simulator.
constexpr std::int64_t kDefaultWalkDimensionCap = 4096;
/// Default amplitude count for the dense circuit simulator (24 wires).
constexpr std::int64_t kDefaultCircuitDimensionCap = std::int64_t{1} << 24;

}  // namespace hybridts

#endif
