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

#include "softgait/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "softgait/error.hpp"
#include "softgait/io.hpp"

namespace softgait {

namespace {

constexpr double kDuplicateTolerance = 1e-9;

std::string loc(const std::filesystem::path& path, int line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

Vec3 SurfaceMesh::bbox_min() const {
  Vec3 m = Vec3::Constant(std::numeric_limits<double>::max());
  for (const Vec3& v : vertices) m = m.cwiseMin(v);
  return m;
}

Vec3 SurfaceMesh::bbox_max() const {
  Vec3 m = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (const Vec3& v : vertices) m = m.cwiseMax(v);
  return m;
}

double SurfaceMesh::bbox_diagonal() const {
  if (vertices.empty()) return 0.0;
  return (bbox_max() - bbox_min()).norm();
}

Vec3 SurfaceMesh::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const Vec3& v : vertices) c += v;
  return vertices.empty() ? c : Vec3(c / double(vertices.size()));
}

void validate_mesh(const SurfaceMesh& mesh) {
  const int n = int(mesh.vertices.size());
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n) {
        throw InputError("face " + std::to_string(f) + ": vertex index " +
                         std::to_string(idx) + " out of range (mesh has " +
                         std::to_string(n) + " vertices)");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw InputError("face " + std::to_string(f) +
                       " is degenerate (repeated vertex index)");
    }
  }

  // Duplicate detection: sort by x, compare within a tolerance window.
  std::vector<int> order(mesh.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mesh.vertices[a].x() < mesh.vertices[b].x();
  });
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = i + 1; j < order.size(); ++j) {
      const Vec3& a = mesh.vertices[order[i]];
      const Vec3& b = mesh.vertices[order[j]];
      if (b.x() - a.x() > kDuplicateTolerance) break;
      if ((a - b).norm() <= kDuplicateTolerance) {
        throw InputError("duplicate vertices " + std::to_string(order[i]) +
                         " and " + std::to_string(order[j]));
      }
    }
  }
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open mesh file: " + path.string());
  }

  SurfaceMesh mesh;
  std::vector<int> face_lines;  // for error reporting after full parse
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        throw InputError(loc(path, line_no) + "malformed vertex line");
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      int value = 0;
      while (ls >> value) idx.push_back(value);
      if (!ls.eof()) {
        throw InputError(loc(path, line_no) + "malformed face line");
      }
      if (idx.size() < 3) {
        throw InputError(loc(path, line_no) +
                         "face needs at least 3 indices");
      }
      for (int i : idx) {
        if (i < 1) {
          throw InputError(loc(path, line_no) +
                           "face indices are 1-based and positive");
        }
      }
      // Fan-triangulate polygons (quads split into two triangles).
      for (size_t k = 2; k < idx.size(); ++k) {
        mesh.faces.push_back({idx[0] - 1, int(idx[k - 1]) - 1, idx[k] - 1});
        face_lines.push_back(line_no);
      }
    } else {
      throw InputError(loc(path, line_no) + "unknown record '" + tag + "'");
    }
  }

  const int n = int(mesh.vertices.size());
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n) {
        throw InputError(loc(path, face_lines[f]) + "face index " +
                         std::to_string(idx + 1) + " out of range (mesh has " +
                         std::to_string(n) + " vertices)");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw InputError(loc(path, face_lines[f]) +
                       "degenerate face (repeated vertex index)");
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write mesh file: " + path.string());
  }
  for (const Vec3& v : mesh.vertices) {
    out << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
        << format_double(v.z()) << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

SurfaceMesh smooth_remesh(const SurfaceMesh& mesh, int iterations,
                          double step) {
  if (iterations < 0) {
    throw InputError("smooth_remesh: iterations must be non-negative");
  }
  std::vector<std::vector<int>> ring(mesh.vertices.size());
  auto link = [&](int a, int b) {
    auto& r = ring[a];
    if (std::find(r.begin(), r.end(), b) == r.end()) r.push_back(b);
  };
  for (const auto& f : mesh.faces) {
    link(f[0], f[1]);
    link(f[1], f[0]);
    link(f[1], f[2]);
    link(f[2], f[1]);
    link(f[2], f[0]);
    link(f[0], f[2]);
  }

  SurfaceMesh out = mesh;
  std::vector<Vec3> next(out.vertices.size());
  for (int it = 0; it < iterations; ++it) {
    for (size_t i = 0; i < out.vertices.size(); ++i) {
      if (ring[i].empty()) {
        next[i] = out.vertices[i];
        continue;
      }
      Vec3 avg = Vec3::Zero();
      for (int j : ring[i]) avg += out.vertices[j];
      avg /= double(ring[i].size());
      next[i] = out.vertices[i] + step * (avg - out.vertices[i]);
    }
    out.vertices.swap(next);
  }
  return out;
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  // Ericson, "Real-Time Collision Detection", closest point on triangle.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return (p - (a + v * ab)).norm();
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return (p - (a + w * ac)).norm();
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (p - (b + w * (c - b))).norm();
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return (p - (a + ab * v + ac * w)).norm();
}

namespace {

std::vector<Vec3> sample_surface(const SurfaceMesh& m, int samples_per_face) {
  std::vector<Vec3> pts = m.vertices;
  // Deterministic interior barycentric samples.
  static const double bary[][3] = {
      {1 / 3.0, 1 / 3.0, 1 / 3.0}, {0.5, 0.25, 0.25},
      {0.25, 0.5, 0.25},           {0.25, 0.25, 0.5},
      {0.5, 0.5, 0.0},             {0.0, 0.5, 0.5},
      {0.5, 0.0, 0.5}};
  const int k = std::min<int>(samples_per_face, 7);
  for (const auto& f : m.faces) {
    for (int s = 0; s < k; ++s) {
      pts.push_back(bary[s][0] * m.vertices[f[0]] +
                    bary[s][1] * m.vertices[f[1]] +
                    bary[s][2] * m.vertices[f[2]]);
    }
  }
  return pts;
}

double directed_hausdorff(const std::vector<Vec3>& pts, const SurfaceMesh& m) {
  double worst = 0.0;
  for (const Vec3& p : pts) {
    double best = std::numeric_limits<double>::max();
    for (const auto& f : m.faces) {
      best = std::min(best, point_triangle_distance(p, m.vertices[f[0]],
                                                    m.vertices[f[1]],
                                                    m.vertices[f[2]]));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const SurfaceMesh& a, const SurfaceMesh& b,
                          int samples_per_face) {
  const double ab = directed_hausdorff(sample_surface(a, samples_per_face), b);
  const double ba = directed_hausdorff(sample_surface(b, samples_per_face), a);
  return std::max(ab, ba);
}

}  // namespace softgait
