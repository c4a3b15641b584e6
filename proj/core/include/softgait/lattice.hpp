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
#include <string>
#include <vector>

#include "softgait/mesh.hpp"
#include "softgait/types.hpp"

namespace softgait {

struct LatticeEdge {
  int i, j;
  double rest_length;
};

// Node/edge/tet network backing a soft body. Nodes are rest positions in
// the asset's local frame; the last node is the interior centroid.
struct VolumetricLattice {
  std::vector<Vec3> nodes;
  std::vector<LatticeEdge> edges;
  std::vector<std::array<int, 4>> tetrahedra;
  std::vector<double> node_masses;  // kg

  double total_mass() const;
};

double tetrahedron_volume(const Vec3& a, const Vec3& b, const Vec3& c,
                          const Vec3& d);

// Builds the centroid-fan lattice: nodes = mesh vertices plus the
// centroid, edges = surface edges plus centroid bracing, one tetrahedron
// per face. Masses are lumped as density times a quarter of each incident
// tet volume. Throws InputError if the mesh is not watertight or any fan
// tetrahedron has non-positive volume.
VolumetricLattice build_lattice(const SurfaceMesh& mesh, double density);

// Invariant checks: positive rest lengths matching node distances,
// connected edge graph, positive tet volumes, positive masses.
void validate_lattice(const VolumetricLattice& lattice);

// Structured-text debug dump of the full lattice.
std::string lattice_debug_dump(const VolumetricLattice& lattice);

}  // namespace softgait
