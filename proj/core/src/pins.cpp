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

#include "softgait/pins.hpp"

#include "softgait/error.hpp"

namespace softgait {

std::vector<Pin> bind_pins(const SoftBody& body, const SegmentState& foot,
                           const Vec3& proxy_center, const Vec3& proxy_half,
                           Side side, const PinSelectionParams& params) {
  const Iso3 inv = foot.pose.inverse();
  std::vector<Pin> pins;
  for (int i = 0; i < body.node_count(); ++i) {
    const Vec3 local = inv * body.positions[i];
    if (local.z() < params.sole_exclusion_z) continue;
    const Vec3 rel = (local - proxy_center).cwiseAbs();
    const Vec3 bound = proxy_half + Vec3::Constant(params.margin);
    if (rel.x() > bound.x() || rel.y() > bound.y() || rel.z() > bound.z()) {
      continue;
    }
    pins.push_back({i, side, local});
  }
  if (int(pins.size()) < params.min_pins) {
    throw InputError("bind_pins: only " + std::to_string(pins.size()) +
                     " candidate nodes inside the " +
                     std::string(side_name(side)) +
                     " foot proxy; at least " +
                     std::to_string(params.min_pins) + " required");
  }
  return pins;
}

void apply_pins(std::span<const Pin> pins, const SegmentState& foot,
                SoftBody& body) {
  for (const Pin& pin : pins) {
    body.positions[pin.node] = foot.pose * pin.local_offset;
    body.velocities[pin.node] =
        foot.linear_velocity +
        foot.angular_velocity.cross(foot.pose.linear() * pin.local_offset);
  }
}

}  // namespace softgait
