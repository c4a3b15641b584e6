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

#include "softgait/types.hpp"

namespace softgait {

struct GroundPlane {
  double height = 0.0;              // z of the plane, m
  double contact_stiffness = 1e5;   // N/m
  double contact_damping = 1e3;     // N*s/m
  double friction_coefficient = 0.9;
};

enum class GrfSource { flex, skeleton };

inline constexpr const char* grf_source_name(GrfSource s) {
  return s == GrfSource::flex ? "flex" : "skeleton";
}

// Per-step, per-side, per-source aggregate of ground reaction force.
struct GrfSample {
  double time = 0.0;
  Side side = Side::left;
  double vertical_force = 0.0;    // N, >= 0
  double horizontal_force = 0.0;  // N, signed forward (x) component
  GrfSource source = GrfSource::flex;
};

// One contiguous interval of a skeleton proxy penetrating the plane.
struct ContactEvent {
  double time = 0.0;  // interval start
  Side side = Side::left;
  double peak_force = 0.0;  // N
};

// Penalty contact at a set of points. For penetration depth
// d = max(0, height - z): fn = stiffness*d + damping*max(0, -vz) upward;
// tangential force opposes horizontal velocity, clamped to mu*fn.
struct PointContactResult {
  std::vector<Vec3> forces;
  double vertical_sum = 0.0;
  double horizontal_sum = 0.0;  // signed x component
  double peak_force = 0.0;      // largest per-point normal force
  bool any_contact = false;
};

PointContactResult point_contact(std::span<const Vec3> positions,
                                 std::span<const Vec3> velocities,
                                 const GroundPlane& plane);

// Turns per-step penetration flags into ContactEvents, one per
// contiguous interval and side.
class ContactEventTracker {
 public:
  void update(Side side, bool penetrating, double peak_force, double time);
  void finish();
  const std::vector<ContactEvent>& events() const { return events_; }
  std::vector<ContactEvent> take_events();

 private:
  struct State {
    bool active = false;
    double start = 0.0;
    double peak = 0.0;
  };
  State state_[2];
  std::vector<ContactEvent> events_;
};

}  // namespace softgait
