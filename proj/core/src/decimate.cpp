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

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "softgait/error.hpp"
#include "softgait/mesh.hpp"

namespace softgait {

namespace {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

struct Candidate {
  double length;
  double error;
  int i, j;            // i < j
  uint64_t stamp;      // version sum at push time
  Vec3 placement;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    // Min-heap by (length, error, i, j); priority_queue is a max-heap,
    // so invert the comparison.
    if (a.length != b.length) return a.length > b.length;
    if (a.error != b.error) return a.error > b.error;
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  }
};

double quadric_error(const Mat4& q, const Vec3& p) {
  Vec4 h(p.x(), p.y(), p.z(), 1.0);
  return h.dot(q * h);
}

class Decimator {
 public:
  Decimator(const SurfaceMesh& mesh, int target)
      : target_(target),
        positions_(mesh.vertices),
        faces_(mesh.faces),
        vertex_alive_(mesh.vertices.size(), true),
        face_alive_(mesh.faces.size(), true),
        quadrics_(mesh.vertices.size(), Mat4::Zero()),
        versions_(mesh.vertices.size(), 0),
        incident_(mesh.vertices.size()) {
    alive_count_ = int(mesh.vertices.size());
    for (size_t f = 0; f < faces_.size(); ++f) {
      for (int v : faces_[f]) incident_[v].push_back(int(f));
      accumulate_face_quadric(int(f));
    }
    for (size_t f = 0; f < faces_.size(); ++f) {
      const auto& face = faces_[f];
      push_edge(face[0], face[1]);
      push_edge(face[1], face[2]);
      push_edge(face[0], face[2]);
    }
  }

  SurfaceMesh run() {
    while (alive_count_ > target_ && !queue_.empty()) {
      Candidate c = queue_.top();
      queue_.pop();
      if (!vertex_alive_[c.i] || !vertex_alive_[c.j]) continue;
      if (c.stamp != versions_[c.i] + versions_[c.j]) continue;
      if (!edge_exists(c.i, c.j)) continue;
      if (!collapse_legal(c.i, c.j, c.placement)) continue;
      collapse(c.i, c.j, c.placement);
    }
    if (alive_count_ > target_) {
      throw PhysicsError(
          "decimation stalled at " + std::to_string(alive_count_) +
          " vertices before reaching target " + std::to_string(target_));
    }
    return compact();
  }

 private:
  void accumulate_face_quadric(int f) {
    const auto& face = faces_[f];
    const Vec3& a = positions_[face[0]];
    const Vec3& b = positions_[face[1]];
    const Vec3& c = positions_[face[2]];
    Vec3 n = (b - a).cross(c - a);
    const double area2 = n.norm();
    if (area2 < 1e-18) return;
    n /= area2;
    const double d = -n.dot(a);
    Vec4 plane(n.x(), n.y(), n.z(), d);
    const Mat4 q = 0.5 * area2 * (plane * plane.transpose());
    for (int v : face) quadrics_[v] += q;
  }

  bool edge_exists(int i, int j) const {
    for (int f : incident_[i]) {
      if (!face_alive_[f]) continue;
      const auto& face = faces_[f];
      if (std::find(face.begin(), face.end(), j) != face.end()) return true;
    }
    return false;
  }

  std::vector<int> ring(int v) const {
    std::vector<int> out;
    for (int f : incident_[v]) {
      if (!face_alive_[f]) continue;
      for (int u : faces_[f]) {
        if (u != v && std::find(out.begin(), out.end(), u) == out.end()) {
          out.push_back(u);
        }
      }
    }
    return out;
  }

  Vec3 optimal_placement(int i, int j, double* error) const {
    const Mat4 q = quadrics_[i] + quadrics_[j];
    const Vec3 mid = 0.5 * (positions_[i] + positions_[j]);

    Mat3 a = q.topLeftCorner<3, 3>();
    Vec3 b = -q.topRightCorner<3, 1>();
    Eigen::FullPivLU<Mat3> lu(a);
    lu.setThreshold(1e-9);
    Vec3 best = mid;
    if (lu.isInvertible()) {
      Vec3 x = lu.solve(b);
      // Reject wild solutions from near-singular quadrics.
      const double span = (positions_[i] - positions_[j]).norm();
      if ((x - mid).norm() <= 3.0 * span + 1e-12) best = x;
    }
    double best_err = quadric_error(q, best);
    for (const Vec3& cand : {positions_[i], positions_[j], mid}) {
      const double e = quadric_error(q, cand);
      if (e < best_err) {
        best = cand;
        best_err = e;
      }
    }
    *error = best_err;
    return best;
  }

  void push_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    Candidate c;
    c.i = a;
    c.j = b;
    c.length = (positions_[a] - positions_[b]).norm();
    c.placement = optimal_placement(a, b, &c.error);
    c.stamp = versions_[a] + versions_[b];
    queue_.push(c);
  }

  bool collapse_legal(int i, int j, const Vec3& placement) const {
    // Link condition: a manifold interior edge shares exactly the two
    // vertices opposite its two faces.
    const std::vector<int> ri = ring(i), rj = ring(j);
    int common = 0;
    for (int u : ri) {
      if (std::find(rj.begin(), rj.end(), u) != rj.end()) ++common;
    }
    if (common != 2) return false;

    // No surviving face may flip or collapse when i/j move to placement.
    for (int v : {i, j}) {
      for (int f : incident_[v]) {
        if (!face_alive_[f]) continue;
        const auto& face = faces_[f];
        const bool shared =
            std::find(face.begin(), face.end(), i) != face.end() &&
            std::find(face.begin(), face.end(), j) != face.end();
        if (shared) continue;  // this face disappears in the collapse
        Vec3 p[3], q[3];
        for (int k = 0; k < 3; ++k) {
          p[k] = positions_[face[k]];
          q[k] = (face[k] == i || face[k] == j) ? placement : p[k];
        }
        const Vec3 n0 = (p[1] - p[0]).cross(p[2] - p[0]);
        const Vec3 n1 = (q[1] - q[0]).cross(q[2] - q[0]);
        if (n1.norm() < 1e-18) return false;
        if (n0.dot(n1) <= 0.0) return false;
      }
    }
    return true;
  }

  void collapse(int i, int j, const Vec3& placement) {
    positions_[i] = placement;
    quadrics_[i] += quadrics_[j];

    // Retarget j's faces to i; drop the two faces shared by the edge.
    for (int f : incident_[j]) {
      if (!face_alive_[f]) continue;
      auto& face = faces_[f];
      const bool has_i = std::find(face.begin(), face.end(), i) != face.end();
      if (has_i) {
        face_alive_[f] = false;
        continue;
      }
      for (int& v : face) {
        if (v == j) v = i;
      }
      incident_[i].push_back(f);
    }
    incident_[j].clear();
    vertex_alive_[j] = false;
    --alive_count_;

    // Invalidate and refresh the neighborhood so rejected edges retry.
    std::vector<int> nbrs = ring(i);
    ++versions_[i];
    ++versions_[j];
    for (int u : nbrs) ++versions_[u];
    for (int u : nbrs) push_edge(i, u);
    for (int u : nbrs) {
      for (int w : ring(u)) {
        if (w != i && (vertex_alive_[w])) push_edge(u, w);
      }
    }
  }

  SurfaceMesh compact() const {
    SurfaceMesh out;
    std::vector<int> remap(positions_.size(), -1);
    for (size_t v = 0; v < positions_.size(); ++v) {
      if (vertex_alive_[v]) {
        remap[v] = int(out.vertices.size());
        out.vertices.push_back(positions_[v]);
      }
    }
    for (size_t f = 0; f < faces_.size(); ++f) {
      if (!face_alive_[f]) continue;
      const auto& face = faces_[f];
      out.faces.push_back({remap[face[0]], remap[face[1]], remap[face[2]]});
    }
    return out;
  }

  int target_;
  int alive_count_;
  std::vector<Vec3> positions_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<char> vertex_alive_, face_alive_;
  std::vector<Mat4> quadrics_;
  std::vector<uint64_t> versions_;
  std::vector<std::vector<int>> incident_;
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder>
      queue_;
};

}  // namespace

SurfaceMesh decimate(const SurfaceMesh& mesh, int target_vertices) {
  if (target_vertices < 4) {
    throw InputError("decimate: target vertex count must be at least 4, got " +
                     std::to_string(target_vertices));
  }
  if (int(mesh.vertices.size()) <= target_vertices) {
    return mesh;
  }
  Decimator dec(mesh, target_vertices);
  return dec.run();
}

}  // namespace softgait
