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

// Regenerates everything under assets/: the high-resolution foot shape,
// the 15-vertex flex foot produced through the smooth+decimate pipeline,
// the synthetic reference gait and the scenario files. Deterministic.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "softgait/gaitlab.hpp"
#include "softgait/lattice.hpp"
#include "softgait/mesh.hpp"
#include "softgait/reference_motion.hpp"
#include "softgait/sim.hpp"

namespace {

using namespace softgait;

// ---- gait + scenario tuning ------------------------------------------
constexpr double kCycle = 1.0;          // s
constexpr double kDuration = 10.0;      // s of reference motion
constexpr double kSampleDt = 0.005;     // reference sampling
constexpr double kStanceFraction = 0.6;
constexpr double kSpeed = 0.5;          // m/s pelvis advance
constexpr double kPelvisHeight = 0.76;  // m
constexpr double kThigh = 0.4, kShank = 0.4;
constexpr double kAnkleTouch = 0.051;   // ankle height where the flex sole
                                        // grazes the floor (offset 0)
constexpr double kStanceDepth = 0.0115; // peak commanded flex compression
constexpr double kSwingLift = 0.045;
constexpr double kPdKp = 450.0;
constexpr double kPdKd = 40.0;

// ---- foot shape -------------------------------------------------------
constexpr int kFootRings = 18;
constexpr int kFootSegments = 19;  // 18*19 + 2 poles = 344 vertices

SurfaceMesh make_foot_mesh() {
  SurfaceMesh mesh;
  const double length = 0.24, half_width = 0.04, half_height = 0.03;

  auto shape = [&](double sx, double sy, double sz) {
    const double toe = std::max(0.0, sx);
    const double wy = 1.0 - 0.25 * toe * toe;
    const double hz =
        sz < 0.0 ? 1.0 - 0.08 * toe * toe : 1.0 - 0.35 * toe * toe;
    return Vec3(length / 2.0 + length / 2.0 * sx, half_width * sy * wy,
                half_height + half_height * sz * hz);
  };

  // Lat-long sphere with the axis along the foot (poles at heel and toe).
  mesh.vertices.push_back(shape(1.0, 0.0, 0.0));   // toe pole
  for (int i = 1; i <= kFootRings; ++i) {
    const double theta = M_PI * i / (kFootRings + 1);
    for (int j = 0; j < kFootSegments; ++j) {
      const double phi = 2.0 * M_PI * j / kFootSegments;
      mesh.vertices.push_back(shape(std::cos(theta),
                                    std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi)));
    }
  }
  mesh.vertices.push_back(shape(-1.0, 0.0, 0.0));  // heel pole
  const int toe = 0;
  const int heel = int(mesh.vertices.size()) - 1;
  auto ring = [&](int i, int j) {
    return 1 + i * kFootSegments + (j % kFootSegments);
  };

  for (int j = 0; j < kFootSegments; ++j) {
    mesh.faces.push_back({toe, ring(0, j + 1), ring(0, j)});
  }
  for (int i = 0; i + 1 < kFootRings; ++i) {
    for (int j = 0; j < kFootSegments; ++j) {
      const int a = ring(i, j), b = ring(i, j + 1);
      const int c = ring(i + 1, j), d = ring(i + 1, j + 1);
      mesh.faces.push_back({a, b, d});
      mesh.faces.push_back({a, d, c});
    }
  }
  for (int j = 0; j < kFootSegments; ++j) {
    mesh.faces.push_back({heel, ring(kFootRings - 1, j),
                          ring(kFootRings - 1, j + 1)});
  }
  validate_mesh(mesh);
  return mesh;
}

// ---- reference gait ---------------------------------------------------
double ease(double from, double to, double u) {
  return from + (to - from) * 0.5 * (1.0 - std::cos(M_PI * u));
}

// Normalized double-hump compression profile over stance progress.
double stance_hump(double s) {
  if (s < 0.25) return ease(0.0, 1.0, s / 0.25);
  if (s < 0.50) return ease(1.0, 0.62, (s - 0.25) / 0.25);
  if (s < 0.75) return ease(0.62, 1.0, (s - 0.5) / 0.25);
  return ease(1.0, 0.0, (s - 0.75) / 0.25);
}

double smoothstep5(double u) {
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

struct AnkleTarget {
  double x, z;
};

// World ankle target for one leg; `phase_shift` is 0 for the left leg and
// half a cycle for the right.
AnkleTarget ankle_target(double t, double phase_shift) {
  const double local = t + kCycle - phase_shift;
  const int cycle_index = int(std::floor(local / kCycle)) - 1;
  const double phase = local / kCycle - (cycle_index + 1);
  const double stride = kSpeed * kCycle;
  // Stance foot placement for this cycle: the foot lands ahead of the
  // pelvis by 30% of a cycle of travel.
  const double foothold =
      kSpeed * (cycle_index * kCycle + phase_shift) + 0.3 * stride;

  AnkleTarget target;
  if (phase < kStanceFraction) {
    const double s = phase / kStanceFraction;
    target.x = foothold;
    target.z = kAnkleTouch - kStanceDepth * stance_hump(s);
  } else {
    const double u = (phase - kStanceFraction) / (1.0 - kStanceFraction);
    target.x = foothold + stride * smoothstep5(u);
    target.z = kAnkleTouch + kSwingLift * std::sin(M_PI * u) *
                                 std::sin(M_PI * u);
  }
  return target;
}

struct LegAngles {
  double hip, knee, ankle;
};

LegAngles leg_ik(double pelvis_x, const AnkleTarget& target) {
  const double dx = target.x - pelvis_x;
  const double dz = target.z - kPelvisHeight;
  double reach = std::sqrt(dx * dx + dz * dz);
  reach = std::min(reach, kThigh + kShank - 1e-4);

  const double cos_interior =
      (kThigh * kThigh + kShank * kShank - reach * reach) /
      (2.0 * kThigh * kShank);
  const double interior = std::acos(std::clamp(cos_interior, -1.0, 1.0));
  const double knee = M_PI - interior;

  const double direction = std::atan2(dx, -dz);
  const double gamma = std::atan2(kShank * std::sin(knee),
                                  kThigh + kShank * std::cos(knee));
  LegAngles angles;
  angles.hip = direction + gamma;
  angles.knee = knee;
  angles.ankle = knee - angles.hip;  // keeps the foot sole level
  return angles;
}

ReferenceMotion make_gait() {
  ReferenceMotion motion;
  const int samples = int(kDuration / kSampleDt) + 1;
  for (int k = 0; k < samples; ++k) {
    const double t = k * kSampleDt;
    const double pelvis_x = kSpeed * t;
    const LegAngles left = leg_ik(pelvis_x, ankle_target(t, 0.0));
    const LegAngles right = leg_ik(pelvis_x, ankle_target(t, kCycle / 2.0));

    motion.t.push_back(t);
    motion.joints[joint::l_hip].push_back(left.hip);
    motion.joints[joint::l_knee].push_back(left.knee);
    motion.joints[joint::l_ankle].push_back(left.ankle);
    motion.joints[joint::r_hip].push_back(right.hip);
    motion.joints[joint::r_knee].push_back(right.knee);
    motion.joints[joint::r_ankle].push_back(right.ankle);
    motion.pelvis_x.push_back(pelvis_x);
    motion.pelvis_z.push_back(kPelvisHeight);
    motion.pelvis_pitch.push_back(0.0);
  }
  return motion;
}

// Sanity check: forward kinematics must reproduce the ankle targets.
void verify_ik(const ReferenceMotion& motion) {
  SkeletonConfig config;
  double worst = 0.0;
  for (size_t k = 0; k < motion.t.size(); k += 7) {
    const double t = motion.t[k];
    SkeletonState state;
    state.pelvis = {kSpeed * t, kPelvisHeight, 0.0, kSpeed, 0.0, 0.0};
    for (int j = 0; j < joint::count; ++j) state.q[j] = motion.joints[j][k];
    const SkeletonKinematics kin = forward_kinematics(config, state);
    for (int s = 0; s < 2; ++s) {
      const AnkleTarget target =
          ankle_target(t, s == 0 ? 0.0 : kCycle / 2.0);
      const Vec3 ankle = kin.foot[s].pose.translation();
      worst = std::max(worst, std::abs(ankle.x() - target.x));
      worst = std::max(worst, std::abs(ankle.z() - target.z));
    }
  }
  if (worst > 1e-6) {
    std::cerr << "ik mismatch: " << worst << "\n";
    std::exit(1);
  }
}

void write_scenario(const std::filesystem::path& path,
                    const std::string& model, const std::string& mode,
                    double dt, double offset_left, double anchor_z) {
  std::ofstream out(path);
  out << "# softgait scenario: model " << model << "\n";
  out << "[world]\n";
  out << "model = " << model << "\n";
  if (dt > 0.0) out << "dt = " << dt << "\n";
  out << "duration = 6.0\n";
  out << "warmup = 1.0\n";
  out << "\n[skeleton]\n";
  out << "kp = " << kPdKp << "\n";
  out << "kd = " << kPdKd << "\n";
  if (model != "SK") {
    out << "flex_offset_left = " << offset_left << "\n";
    out << "flex_offset_right = 0.0\n";
    out << "flex_anchor_z = " << anchor_z << "\n";
    out << "foot_mesh_left = ../foot15.obj\n";
    out << "foot_mesh_right = ../foot15.obj\n";
  }
  if (!mode.empty()) {
    out << "\n[material]\n";
    out << "mode = " << mode << "\n";
  }
  out << "\n[contact]\n";
  out << "stiffness = 1e5\n";
  out << "damping = 1e3\n";
  out << "friction = 0.9\n";
  out << "\n[reference]\n";
  out << "motion = ../reference_gait.csv\n";
  out << "band = synth\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path out_dir = "assets";
  if (argc > 1) out_dir = argv[1];
  std::filesystem::create_directories(out_dir / "scenarios");

  const SurfaceMesh foot_hi = make_foot_mesh();
  save_mesh(foot_hi, out_dir / "foot_hi.obj");
  std::cout << "foot_hi.obj: " << foot_hi.vertices.size() << " vertices, "
            << foot_hi.faces.size() << " faces\n";

  // The paper's pipeline order: smooth first, then reduce.
  const SurfaceMesh smoothed = smooth_remesh(foot_hi, 2, 0.3);
  const SurfaceMesh foot15 = decimate(smoothed, 15);
  save_mesh(foot15, out_dir / "foot15.obj");
  const double distance = hausdorff_distance(foot_hi, foot15);
  std::cout << "foot15.obj: " << foot15.vertices.size() << " vertices, "
            << foot15.faces.size() << " faces, hausdorff "
            << distance << " m (" << 100.0 * distance / foot_hi.bbox_diagonal()
            << "% of diagonal)\n";

  const VolumetricLattice lattice = build_lattice(foot15, 1060.0);
  std::cout << "foot15 lattice: " << lattice.nodes.size() << " nodes, "
            << lattice.edges.size() << " edges, "
            << lattice.tetrahedra.size() << " tets, mass "
            << lattice.total_mass() << " kg\n";

  const ReferenceMotion gait = make_gait();
  verify_ik(gait);
  gait.save(out_dir / "reference_gait.csv");
  std::cout << "reference_gait.csv: " << gait.t.size() << " samples over "
            << gait.duration() << " s\n";

  // Anchor so the decimated sole grazes the floor when the ankle sits at
  // the gait's touch height.
  const double anchor_z = -(kAnkleTouch + foot15.bbox_min().z());
  write_scenario(out_dir / "scenarios" / "sk.ini", "SK", "", 0.0, 0.0,
                 anchor_z);
  write_scenario(out_dir / "scenarios" / "a.ini", "A", "spring", 0.0, 0.0,
                 anchor_z);
  write_scenario(out_dir / "scenarios" / "b.ini", "B", "spring", 0.0, 0.0,
                 anchor_z);
  write_scenario(out_dir / "scenarios" / "e.ini", "E", "spring", 0.0, 0.001,
                 anchor_z);
  write_scenario(out_dir / "scenarios" / "e_fem.ini", "E", "fem", 5e-4,
                 0.001, anchor_z);
  std::cout << "scenarios: sk, a, b, e, e_fem\n";
  return 0;
}
