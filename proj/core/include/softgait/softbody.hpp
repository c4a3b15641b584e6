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

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "softgait/lattice.hpp"
#include "softgait/material.hpp"
#include "softgait/types.hpp"

namespace softgait {

// Deformable body: lattice (immutable rest configuration in local frame)
// plus current world-frame node states and a material law.
struct SoftBody {
  VolumetricLattice lattice;
  std::vector<Vec3> positions;
  std::vector<Vec3> velocities;
  std::variant<SpringMaterial, FemMaterial> material;
  std::vector<char> pinned;  // per-node flag, set when bound to a segment

  // Per-tetrahedron precomputation. `stiffness` is the 12x12 linear-tet
  // matrix (filled for FEM materials only).
  struct TetData {
    Mat3 inv_rest;
    double volume;
    Eigen::Matrix<double, 12, 12> stiffness;
  };
  std::vector<TetData> tets;

  static SoftBody create(VolumetricLattice lattice,
                         std::variant<SpringMaterial, FemMaterial> material);

  // Rigid placement of the current node states.
  void apply_transform(const Iso3& transform);

  int node_count() const { return int(positions.size()); }
  bool is_spring() const {
    return std::holds_alternative<SpringMaterial>(material);
  }
  const SpringMaterial& spring() const {
    return std::get<SpringMaterial>(material);
  }
  const FemMaterial& fem() const { return std::get<FemMaterial>(material); }
};

// Edge-spring forces: for edge (i,j), f_i = -k(|x_i-x_j| - L0) u
//                                            - c((v_i-v_j).u) u,
// with u the unit vector from j to i; f_j = -f_i. Throws PhysicsError on
// a coincident edge (length < 1e-12 m).
std::vector<Vec3> spring_forces(const SoftBody& body);

// Corotational linear FEM forces (stiffness warping): per tet,
// f = -R K0 (R^T x - x0), plus damping -beta R K0 R^T v. Throws
// PhysicsError with the tet index on element inversion.
std::vector<Vec3> fem_forces(const SoftBody& body);

// Elastic part only (no damping); dispatches on the material.
std::vector<Vec3> elastic_forces(const SoftBody& body);

// Accumulates the material damping operator D (3n x 3n, positive
// semidefinite) such that the damping force is -D v.
void add_damping_matrix(const SoftBody& body, Eigen::MatrixXd& damping);

// Kinetic + elastic + gravitational potential (z = 0 reference plane).
double total_energy(const SoftBody& body, double gravity);

}  // namespace softgait
