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

#include "softgait/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "softgait/error.hpp"
#include "softgait/io.hpp"

namespace softgait {

double VolumetricLattice::total_mass() const {
  return std::accumulate(node_masses.begin(), node_masses.end(), 0.0);
}

double tetrahedron_volume(const Vec3& a, const Vec3& b, const Vec3& c,
                          const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

VolumetricLattice build_lattice(const SurfaceMesh& mesh, double density) {
  if (density <= 0.0) {
    throw InputError("build_lattice: density must be positive");
  }
  validate_mesh(mesh);
  if (mesh.faces.empty()) {
    throw InputError("build_lattice: mesh has no faces");
  }

  // Watertight: every undirected edge is shared by exactly two faces with
  // opposite orientation.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : mesh.faces) {
    const int e[3][2] = {{f[0], f[1]}, {f[1], f[2]}, {f[2], f[0]}};
    for (const auto& d : e) {
      if (++directed[{d[0], d[1]}] > 1) {
        throw InputError("build_lattice: mesh is not watertight (edge " +
                         std::to_string(d[0]) + "-" + std::to_string(d[1]) +
                         " repeated with same orientation)");
      }
    }
  }
  for (const auto& [edge, count] : directed) {
    auto rev = directed.find({edge.second, edge.first});
    if (rev == directed.end()) {
      throw InputError("build_lattice: mesh is not watertight (open edge " +
                       std::to_string(edge.first) + "-" +
                       std::to_string(edge.second) + ")");
    }
  }

  // Normalize winding so the enclosed volume is positive.
  std::vector<std::array<int, 3>> faces = mesh.faces;
  double signed_volume = 0.0;
  for (const auto& f : faces) {
    signed_volume += mesh.vertices[f[0]]
                         .cross(mesh.vertices[f[1]])
                         .dot(mesh.vertices[f[2]]) /
                     6.0;
  }
  if (signed_volume < 0.0) {
    for (auto& f : faces) std::swap(f[1], f[2]);
  }

  VolumetricLattice lattice;
  lattice.nodes = mesh.vertices;
  const Vec3 centroid = mesh.centroid();
  lattice.nodes.push_back(centroid);
  const int c = int(lattice.nodes.size()) - 1;

  // Surface edges (unique undirected) plus centroid bracing.
  std::map<std::pair<int, int>, bool> seen;
  auto add_edge = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (seen.emplace(std::make_pair(i, j), true).second) {
      const double len = (lattice.nodes[i] - lattice.nodes[j]).norm();
      lattice.edges.push_back({i, j, len});
    }
  };
  for (const auto& f : faces) {
    add_edge(f[0], f[1]);
    add_edge(f[1], f[2]);
    add_edge(f[2], f[0]);
  }
  for (int v = 0; v < c; ++v) add_edge(v, c);

  lattice.node_masses.assign(lattice.nodes.size(), 0.0);
  for (const auto& f : faces) {
    const std::array<int, 4> tet = {c, f[0], f[1], f[2]};
    const double vol =
        tetrahedron_volume(lattice.nodes[tet[0]], lattice.nodes[tet[1]],
                           lattice.nodes[tet[2]], lattice.nodes[tet[3]]);
    if (vol <= 0.0) {
      throw InputError(
          "build_lattice: centroid-fan tetrahedron over face (" +
          std::to_string(f[0]) + "," + std::to_string(f[1]) + "," +
          std::to_string(f[2]) + ") has non-positive volume (mesh is not "
          "star-shaped about its centroid)");
    }
    lattice.tetrahedra.push_back(tet);
    for (int v : tet) lattice.node_masses[v] += density * vol / 4.0;
  }

  validate_lattice(lattice);
  return lattice;
}

void validate_lattice(const VolumetricLattice& lattice) {
  const int n = int(lattice.nodes.size());
  if (int(lattice.node_masses.size()) != n) {
    throw InputError("lattice: node/mass count mismatch");
  }
  for (double m : lattice.node_masses) {
    if (!(m > 0.0)) throw InputError("lattice: non-positive node mass");
  }
  for (const auto& e : lattice.edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.i == e.j) {
      throw InputError("lattice: bad edge endpoints");
    }
    const double len = (lattice.nodes[e.i] - lattice.nodes[e.j]).norm();
    if (!(e.rest_length > 0.0) ||
        std::abs(len - e.rest_length) > 1e-9 * std::max(1.0, len)) {
      throw InputError("lattice: rest length does not match node distance");
    }
  }
  for (size_t t = 0; t < lattice.tetrahedra.size(); ++t) {
    const auto& tet = lattice.tetrahedra[t];
    const double vol =
        tetrahedron_volume(lattice.nodes[tet[0]], lattice.nodes[tet[1]],
                           lattice.nodes[tet[2]], lattice.nodes[tet[3]]);
    if (vol <= 0.0) {
      throw InputError("lattice: tetrahedron " + std::to_string(t) +
                       " has non-positive volume");
    }
  }

  // Connectivity over the edge graph.
  if (n > 0) {
    std::vector<char> visited(n, false);
    std::vector<int> stack = {0};
    visited[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& e : lattice.edges) {
        const int other = e.i == v ? e.j : (e.j == v ? e.i : -1);
        if (other >= 0 && !visited[other]) {
          visited[other] = true;
          ++count;
          stack.push_back(other);
        }
      }
    }
    if (count != n) {
      throw InputError("lattice: edge graph is not connected");
    }
  }
}

std::string lattice_debug_dump(const VolumetricLattice& lattice) {
  std::ostringstream out;
  out << "lattice nodes=" << lattice.nodes.size()
      << " edges=" << lattice.edges.size()
      << " tets=" << lattice.tetrahedra.size()
      << " mass=" << format_double(lattice.total_mass()) << "\n";
  for (size_t i = 0; i < lattice.nodes.size(); ++i) {
    const Vec3& p = lattice.nodes[i];
    out << "node " << i << ' ' << format_double(p.x()) << ' '
        << format_double(p.y()) << ' ' << format_double(p.z()) << " mass "
        << format_double(lattice.node_masses[i]) << "\n";
  }
  for (size_t e = 0; e < lattice.edges.size(); ++e) {
    out << "edge " << e << ' ' << lattice.edges[e].i << ' '
        << lattice.edges[e].j << " rest "
        << format_double(lattice.edges[e].rest_length) << "\n";
  }
  for (size_t t = 0; t < lattice.tetrahedra.size(); ++t) {
    const auto& tet = lattice.tetrahedra[t];
    out << "tet " << t << ' ' << tet[0] << ' ' << tet[1] << ' ' << tet[2]
        << ' ' << tet[3] << " volume "
        << format_double(tetrahedron_volume(
               lattice.nodes[tet[0]], lattice.nodes[tet[1]],
               lattice.nodes[tet[2]], lattice.nodes[tet[3]]))
        << "\n";
  }
  return out.str();
}

}  // namespace softgait
