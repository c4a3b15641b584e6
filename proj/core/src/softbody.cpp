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

#include "softgait/softbody.hpp"

#include <Eigen/SVD>

#include "softgait/error.hpp"

namespace softgait {

namespace {

using Mat12 = Eigen::Matrix<double, 12, 12>;
using Vec12 = Eigen::Matrix<double, 12, 1>;

constexpr double kSingularEdgeLength = 1e-12;

// Linear tetrahedron stiffness, Voigt notation with engineering shear.
Mat12 tet_stiffness(const Mat3& inv_rest, double volume,
                    const LameParameters& lame) {
  // Barycentric gradients: grad(phi_j) = inv_rest.row(j), j = 1..3;
  // grad(phi_0) closes the partition of unity.
  Vec3 g[4];
  g[1] = inv_rest.row(0).transpose();
  g[2] = inv_rest.row(1).transpose();
  g[3] = inv_rest.row(2).transpose();
  g[0] = -(g[1] + g[2] + g[3]);

  Eigen::Matrix<double, 6, 12> b = Eigen::Matrix<double, 6, 12>::Zero();
  for (int a = 0; a < 4; ++a) {
    const int c = 3 * a;
    b(0, c + 0) = g[a].x();
    b(1, c + 1) = g[a].y();
    b(2, c + 2) = g[a].z();
    b(3, c + 0) = g[a].y();
    b(3, c + 1) = g[a].x();
    b(4, c + 1) = g[a].z();
    b(4, c + 2) = g[a].y();
    b(5, c + 0) = g[a].z();
    b(5, c + 2) = g[a].x();
  }

  Eigen::Matrix<double, 6, 6> c = Eigen::Matrix<double, 6, 6>::Zero();
  const double l = lame.lambda, m = lame.mu;
  c(0, 0) = c(1, 1) = c(2, 2) = l + 2.0 * m;
  c(0, 1) = c(0, 2) = c(1, 0) = c(1, 2) = c(2, 0) = c(2, 1) = l;
  c(3, 3) = c(4, 4) = c(5, 5) = m;

  return volume * b.transpose() * c * b;
}

// Rotation factor of the deformation gradient via SVD, with reflection
// correction. Throws on inversion (det F <= 0).
Mat3 polar_rotation(const Mat3& f, int tet_index) {
  if (f.determinant() <= 0.0) {
    throw PhysicsError("element inversion in tetrahedron " +
                       std::to_string(tet_index));
  }
  Eigen::JacobiSVD<Mat3> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) {
    u.col(2) *= -1.0;
  }
  return u * v.transpose();
}

struct TetState {
  Mat3 rotation;
  Vec12 rest;       // stacked rest positions
  Vec12 current;    // stacked current positions
};

TetState gather_tet(const SoftBody& body, int t) {
  const auto& tet = body.lattice.tetrahedra[t];
  TetState s;
  Mat3 ds;
  for (int a = 0; a < 4; ++a) {
    s.rest.segment<3>(3 * a) = body.lattice.nodes[tet[a]];
    s.current.segment<3>(3 * a) = body.positions[tet[a]];
  }
  for (int col = 0; col < 3; ++col) {
    ds.col(col) =
        body.positions[tet[col + 1]] - body.positions[tet[0]];
  }
  const Mat3 f = ds * body.tets[t].inv_rest;
  s.rotation = polar_rotation(f, t);
  return s;
}

Vec12 rotate_blocks(const Mat3& r, const Vec12& v) {
  Vec12 out;
  for (int a = 0; a < 4; ++a) {
    out.segment<3>(3 * a) = r * v.segment<3>(3 * a);
  }
  return out;
}

}  // namespace

SoftBody SoftBody::create(
    VolumetricLattice lattice,
    std::variant<SpringMaterial, FemMaterial> material) {
  std::visit([](const auto& m) { validate_material(m); }, material);
  SoftBody body;
  body.lattice = std::move(lattice);
  body.positions = body.lattice.nodes;
  body.velocities.assign(body.positions.size(), Vec3::Zero());
  body.material = material;
  body.pinned.assign(body.positions.size(), false);

  const bool fem = std::holds_alternative<FemMaterial>(material);
  LameParameters lame;
  if (fem) lame = lame_parameters(std::get<FemMaterial>(material));

  body.tets.reserve(body.lattice.tetrahedra.size());
  for (const auto& tet : body.lattice.tetrahedra) {
    TetData data;
    Mat3 dm;
    for (int col = 0; col < 3; ++col) {
      dm.col(col) =
          body.lattice.nodes[tet[col + 1]] - body.lattice.nodes[tet[0]];
    }
    data.volume = dm.determinant() / 6.0;
    if (data.volume <= 0.0) {
      throw InputError("soft body: rest tetrahedron has non-positive volume");
    }
    data.inv_rest = dm.inverse();
    if (fem) {
      data.stiffness = tet_stiffness(data.inv_rest, data.volume, lame);
    } else {
      data.stiffness.setZero();
    }
    body.tets.push_back(data);
  }
  return body;
}

void SoftBody::apply_transform(const Iso3& transform) {
  for (Vec3& p : positions) p = transform * p;
  for (Vec3& v : velocities) v = transform.linear() * v;
}

std::vector<Vec3> spring_forces(const SoftBody& body) {
  const SpringMaterial& mat = body.spring();
  std::vector<Vec3> forces(body.positions.size(), Vec3::Zero());
  for (const LatticeEdge& e : body.lattice.edges) {
    const Vec3 d = body.positions[e.i] - body.positions[e.j];
    const double len = d.norm();
    if (len < kSingularEdgeLength) {
      throw PhysicsError("singular edge " + std::to_string(e.i) + "-" +
                         std::to_string(e.j) + " (coincident endpoints)");
    }
    const Vec3 u = d / len;
    const double rate = (body.velocities[e.i] - body.velocities[e.j]).dot(u);
    const Vec3 f =
        (-mat.stiffness * (len - e.rest_length) - mat.damping * rate) * u;
    forces[e.i] += f;
    forces[e.j] -= f;
  }
  return forces;
}

std::vector<Vec3> fem_forces(const SoftBody& body) {
  const FemMaterial& mat = body.fem();
  std::vector<Vec3> forces(body.positions.size(), Vec3::Zero());
  for (size_t t = 0; t < body.lattice.tetrahedra.size(); ++t) {
    const TetState s = gather_tet(body, int(t));
    const Mat3& r = s.rotation;
    const Mat3 rt = r.transpose();

    const Vec12 u = rotate_blocks(rt, s.current) - s.rest;
    Vec12 f = -rotate_blocks(r, body.tets[t].stiffness * u);

    if (mat.damping_coefficient > 0.0) {
      Vec12 v;
      const auto& tet = body.lattice.tetrahedra[t];
      for (int a = 0; a < 4; ++a) {
        v.segment<3>(3 * a) = body.velocities[tet[a]];
      }
      f -= mat.damping_coefficient *
           rotate_blocks(r, body.tets[t].stiffness * rotate_blocks(rt, v));
    }

    const auto& tet = body.lattice.tetrahedra[t];
    for (int a = 0; a < 4; ++a) {
      forces[tet[a]] += f.segment<3>(3 * a);
    }
  }
  return forces;
}

std::vector<Vec3> elastic_forces(const SoftBody& body) {
  if (body.is_spring()) {
    const SpringMaterial& mat = body.spring();
    std::vector<Vec3> forces(body.positions.size(), Vec3::Zero());
    for (const LatticeEdge& e : body.lattice.edges) {
      const Vec3 d = body.positions[e.i] - body.positions[e.j];
      const double len = d.norm();
      if (len < kSingularEdgeLength) {
        throw PhysicsError("singular edge " + std::to_string(e.i) + "-" +
                           std::to_string(e.j) + " (coincident endpoints)");
      }
      const Vec3 f = (-mat.stiffness * (len - e.rest_length) / len) * d;
      forces[e.i] += f;
      forces[e.j] -= f;
    }
    return forces;
  }

  std::vector<Vec3> forces(body.positions.size(), Vec3::Zero());
  for (size_t t = 0; t < body.lattice.tetrahedra.size(); ++t) {
    const TetState s = gather_tet(body, int(t));
    const Vec12 u = rotate_blocks(s.rotation.transpose(), s.current) - s.rest;
    const Vec12 f = -rotate_blocks(s.rotation, body.tets[t].stiffness * u);
    const auto& tet = body.lattice.tetrahedra[t];
    for (int a = 0; a < 4; ++a) {
      forces[tet[a]] += f.segment<3>(3 * a);
    }
  }
  return forces;
}

void add_damping_matrix(const SoftBody& body, Eigen::MatrixXd& damping) {
  if (body.is_spring()) {
    const double c = body.spring().damping;
    if (c <= 0.0) return;
    for (const LatticeEdge& e : body.lattice.edges) {
      const Vec3 d = body.positions[e.i] - body.positions[e.j];
      const double len = d.norm();
      if (len < kSingularEdgeLength) continue;
      const Vec3 u = d / len;
      const Mat3 block = c * (u * u.transpose());
      damping.block<3, 3>(3 * e.i, 3 * e.i) += block;
      damping.block<3, 3>(3 * e.j, 3 * e.j) += block;
      damping.block<3, 3>(3 * e.i, 3 * e.j) -= block;
      damping.block<3, 3>(3 * e.j, 3 * e.i) -= block;
    }
    return;
  }

  const double beta = body.fem().damping_coefficient;
  if (beta <= 0.0) return;
  for (size_t t = 0; t < body.lattice.tetrahedra.size(); ++t) {
    const TetState s = gather_tet(body, int(t));
    const Mat3& r = s.rotation;
    // Warped stiffness: R_hat K0 R_hat^T, scaled by the damping coefficient.
    Mat12 warped;
    const Mat12& k0 = body.tets[t].stiffness;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        warped.block<3, 3>(3 * a, 3 * b) =
            r * k0.block<3, 3>(3 * a, 3 * b) * r.transpose();
      }
    }
    const auto& tet = body.lattice.tetrahedra[t];
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        damping.block<3, 3>(3 * tet[a], 3 * tet[b]) +=
            beta * warped.block<3, 3>(3 * a, 3 * b);
      }
    }
  }
}

double total_energy(const SoftBody& body, double gravity) {
  double energy = 0.0;
  for (int i = 0; i < body.node_count(); ++i) {
    const double m = body.lattice.node_masses[i];
    energy += 0.5 * m * body.velocities[i].squaredNorm();
    energy += m * gravity * body.positions[i].z();
  }
  if (body.is_spring()) {
    const double k = body.spring().stiffness;
    for (const LatticeEdge& e : body.lattice.edges) {
      const double len = (body.positions[e.i] - body.positions[e.j]).norm();
      const double ext = len - e.rest_length;
      energy += 0.5 * k * ext * ext;
    }
  } else {
    for (size_t t = 0; t < body.lattice.tetrahedra.size(); ++t) {
      const TetState s = gather_tet(body, int(t));
      const Vec12 u =
          rotate_blocks(s.rotation.transpose(), s.current) - s.rest;
      energy += 0.5 * u.dot(body.tets[t].stiffness * u);
    }
  }
  return energy;
}

}  // namespace softgait
