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

#include "softgait/types.hpp"

namespace softgait {

// Triangle surface mesh in meters. Faces hold 0-based vertex indices.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  Vec3 bbox_min() const;
  Vec3 bbox_max() const;
  double bbox_diagonal() const;
  Vec3 centroid() const;
};

// Checks face index ranges, degenerate faces (repeated indices) and
// duplicate vertices within 1e-9 m. Throws InputError on violation.
void validate_mesh(const SurfaceMesh& mesh);

// ASCII polygon format: `v x y z` vertex lines and `f i j k [l ...]`
// face lines with 1-based indices. Quads and larger polygons are
// fan-triangulated. Parse errors carry the offending line number.
SurfaceMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);

// Laplacian smoothing: each iteration moves every vertex toward the
// average of its 1-ring neighbors by `step`. Vertex count and
// connectivity are unchanged; step 0 is the identity.
SurfaceMesh smooth_remesh(const SurfaceMesh& mesh, int iterations, double step);

// Edge-collapse decimation, shortest edge first with quadric error as
// tie-break and placement rule. Returns the input unchanged when it is
// already at or below `target_vertices`. Throws InputError for targets
// below 4.
SurfaceMesh decimate(const SurfaceMesh& mesh, int target_vertices);

// Symmetric max-min surface distance, estimated by sampling vertices
// plus `samples_per_face` interior points per face on both meshes.
double hausdorff_distance(const SurfaceMesh& a, const SurfaceMesh& b,
                          int samples_per_face = 4);

// Distance from a point to a triangle (used by the Hausdorff estimate).
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);

}  // namespace softgait
