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

#include <array>
#include <filesystem>
#include <vector>

#include "softgait/skeleton.hpp"

namespace softgait {

struct ReferenceSample {
  std::array<double, joint::count> angles{};
  std::array<double, joint::count> rates{};
  PelvisState pelvis;
};

// Target joint-angle trajectories plus the pelvis path driving the biped.
// CSV columns: t, l_hip, l_knee, l_ankle, r_hip, r_knee, r_ankle,
// pelvis_x, pelvis_z, pelvis_pitch (s, rad, m).
struct ReferenceMotion {
  std::vector<double> t;
  std::array<std::vector<double>, joint::count> joints;
  std::vector<double> pelvis_x, pelvis_z, pelvis_pitch;

  double duration() const { return t.empty() ? 0.0 : t.back(); }

  // Clamped linear interpolation; rates are the segment slopes.
  ReferenceSample sample(double time) const;

  void validate() const;
  static ReferenceMotion load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

}  // namespace softgait
