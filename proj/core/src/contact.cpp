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

#include "softgait/contact.hpp"

#include <algorithm>
#include <cmath>

namespace softgait {

PointContactResult point_contact(std::span<const Vec3> positions,
                                 std::span<const Vec3> velocities,
                                 const GroundPlane& plane) {
  PointContactResult result;
  result.forces.assign(positions.size(), Vec3::Zero());
  for (size_t i = 0; i < positions.size(); ++i) {
    const double depth = plane.height - positions[i].z();
    if (depth <= 0.0) continue;
    const Vec3& v = velocities[i];
    const double fn = plane.contact_stiffness * depth +
                      plane.contact_damping * std::max(0.0, -v.z());
    Vec3 f(0.0, 0.0, fn);

    const Vec3 vt(v.x(), v.y(), 0.0);
    const double speed = vt.norm();
    if (speed > 1e-12) {
      const double ft = std::min(plane.contact_damping * speed,
                                 plane.friction_coefficient * fn);
      f -= (ft / speed) * vt;
    }

    result.forces[i] = f;
    result.vertical_sum += fn;
    result.horizontal_sum += f.x();
    result.peak_force = std::max(result.peak_force, fn);
    result.any_contact = true;
  }
  return result;
}

void ContactEventTracker::update(Side side, bool penetrating,
                                 double peak_force, double time) {
  State& s = state_[side_index(side)];
  if (penetrating) {
    if (!s.active) {
      s.active = true;
      s.start = time;
      s.peak = peak_force;
    } else {
      s.peak = std::max(s.peak, peak_force);
    }
  } else if (s.active) {
    events_.push_back({s.start, side, s.peak});
    s.active = false;
  }
}

void ContactEventTracker::finish() {
  for (int i = 0; i < 2; ++i) {
    if (state_[i].active) {
      events_.push_back({state_[i].start, side_from_index(i), state_[i].peak});
      state_[i].active = false;
    }
  }
}

std::vector<ContactEvent> ContactEventTracker::take_events() {
  finish();
  return std::move(events_);
}

}  // namespace softgait
