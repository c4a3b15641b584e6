// Copyright 2026 The softgait Authors
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

#pragma once

#include <span>
#include <vector>

#include "softgait/skeleton.hpp"
#include "softgait/softbody.hpp"
#include "softgait/types.hpp"

namespace softgait {

// Hard kinematic attachment of a soft-body node to a skeleton segment.
struct Pin {
  int node = -1;
  Side side = Side::left;
  Vec3 local_offset = Vec3::Zero();  // foot-segment frame
};

struct PinSelectionParams {
  double margin = 0.04;            // proxy inflation, m
  double sole_exclusion_z = -0.045;  // foot-frame z below which nodes stay free
  int min_pins = 4;
};

// Selects nodes inside the foot collision box inflated by `margin`,
// excluding everything below the sole-exclusion plane so the sole can
// deform, and records their foot-frame offsets. Throws InputError when
// fewer than `min_pins` candidates remain.
std::vector<Pin> bind_pins(const SoftBody& body, const SegmentState& foot,
                           const Vec3& proxy_center, const Vec3& proxy_half,
                           Side side, const PinSelectionParams& params = {});

// Prescribes pinned node positions and velocities from the rigid motion
// of the owning segment. Unpinned nodes are untouched.
void apply_pins(std::span<const Pin> pins, const SegmentState& foot,
                SoftBody& body);

}  // namespace softgait
