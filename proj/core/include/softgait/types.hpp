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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace softgait {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Iso3 = Eigen::Isometry3d;

enum class Side { left, right };

inline constexpr const char* side_name(Side s) {
  return s == Side::left ? "left" : "right";
}

inline constexpr int side_index(Side s) { return s == Side::left ? 0 : 1; }

inline constexpr Side side_from_index(int i) {
  return i == 0 ? Side::left : Side::right;
}

}  // namespace softgait
