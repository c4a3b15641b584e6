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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "softgait/contact.hpp"
#include "softgait/mesh.hpp"
#include "softgait/pins.hpp"
#include "softgait/reference_motion.hpp"
#include "softgait/skeleton.hpp"
#include "softgait/softbody.hpp"

namespace softgait {

enum class MaterialMode { spring, fem };

MaterialMode material_mode_from_string(const std::string& name);
const char* material_mode_name(MaterialMode mode);

// Where the flex asset sits in the foot-segment frame. A positive
// per-side offset lowers the flex, adding clearance between the flex
// sole and the skeleton foot box.
struct FlexPlacement {
  double anchor_x = -0.06;
  double anchor_z = -0.050;
  double offset_left = 0.0;
  double offset_right = 0.0;

  double offset(Side s) const {
    return s == Side::left ? offset_left : offset_right;
  }
};

struct WorldConfig {
  double dt = 0.0;  // 0 -> mode default: 1e-3 spring, 5e-4 fem
  double duration = 6.0;
  double gravity = 9.81;
  MaterialMode mode = MaterialMode::spring;
  std::string label = "custom";  // "SK" disables the flex feet
  SpringMaterial spring;
  FemMaterial fem;
  double flex_density = 1060.0;  // kg/m^3
  FlexPlacement placement;
  GroundPlane plane;
  double pd_kp = 300.0;
  double pd_kd = 30.0;
  bool velocity_feedforward = true;
  bool gravity_compensation = true;
  SkeletonConfig skeleton;
  PinSelectionParams pin_params;
  double warmup = 1.0;      // analysis-side default carried with the scenario
  unsigned random_seed = 0;  // reserved; the physics never draws from it
  bool attach_feet = true;

  double resolved_dt() const {
    return dt > 0.0 ? dt : (mode == MaterialMode::spring ? 1e-3 : 5e-4);
  }
  bool flex_enabled() const { return label != "SK"; }
  void validate() const;
};

// One logged step of ground reaction force, split by side and source.
struct GrfRow {
  double t = 0.0;
  std::array<double, 2> flex_fz{};  // [left, right]
  std::array<double, 2> skel_fz{};

  double total(Side s) const {
    return flex_fz[side_index(s)] + skel_fz[side_index(s)];
  }
};

struct SimOutput {
  std::vector<double> time;
  std::vector<GrfRow> grf;
  std::vector<std::array<double, joint::count>> joints;
  std::vector<GrfSample> grf_samples;
  std::vector<ContactEvent> events;
  std::vector<double> energy;
  bool stable = true;
  double failure_time = -1.0;
  int failure_step = -1;
  std::string failure_reason;
  double body_weight = 0.0;  // N, skeleton plus flex
};

// Integrates one soft body: explicit elastic/contact/gravity forces,
// velocities first (damping handled implicitly), then positions. Nodes
// listed in `fixed` keep their current state.
struct SoftBodyStepOptions {
  double dt = 1e-3;
  double gravity = 0.0;
  const GroundPlane* plane = nullptr;
  std::span<const Vec3> external_forces = {};  // per node, optional
  std::span<const int> fixed_nodes = {};
};

void step_soft_body(SoftBody& body, const SoftBodyStepOptions& options);

// Coupled world: kinematically guided pelvis, torque-driven joints
// tracking the reference motion, flex feet pinned to the foot segments.
class World {
 public:
  World(const WorldConfig& config, const SurfaceMesh* foot_left,
        const SurfaceMesh* foot_right, ReferenceMotion reference);

  // One semi-implicit step: forces, velocity update, position update,
  // pin projection, logging. Throws PhysicsError on non-finite state or
  // element inversion, tagged with the step index.
  void step();

  // Steps for duration/dt steps or until instability; instability is a
  // reported outcome (stable flag false), not an abort.
  SimOutput run();

  double time() const { return time_; }
  int steps_taken() const { return step_count_; }
  const WorldConfig& config() const { return config_; }
  const SkeletonState& skeleton_state() const { return state_; }
  SkeletonState& skeleton_state() { return state_; }
  const std::optional<SoftBody>& foot_body(Side s) const {
    return feet_[side_index(s)];
  }
  const std::vector<Pin>& foot_pins(Side s) const {
    return pins_[side_index(s)];
  }
  const SimOutput& output() const { return output_; }
  double total_energy_now() const;

 private:
  void log_step(const GrfRow& row, const std::array<bool, 2>& skel_contact,
                const std::array<double, 2>& skel_peak, double t_before);
  void check_finite() const;

  WorldConfig config_;
  ReferenceMotion reference_;
  SkeletonState state_;
  std::array<double, joint::count> inertia_;
  std::array<std::optional<SoftBody>, 2> feet_;
  std::array<std::vector<Pin>, 2> pins_;
  ContactEventTracker tracker_;
  SimOutput output_;
  double time_ = 0.0;
  double dt_ = 0.0;
  int step_count_ = 0;
  double energy_threshold_ = -1.0;  // set once the initial window fills
  int energy_window_ = 100;
};

SimOutput run_simulation(const WorldConfig& config,
                         const SurfaceMesh* foot_left,
                         const SurfaceMesh* foot_right,
                         const ReferenceMotion& reference);

enum class Stability { ok, diverging };

struct StabilityReport {
  Stability verdict = Stability::ok;
  int first_bad_index = -1;
};

// Diverging iff any non-finite sample or total energy exceeding 10x the
// median of the initial window. Requires at least 2 samples.
StabilityReport check_stability(std::span<const double> energy);

// Trace containers and the fixed-format CSV surfaces.
struct GrfTrace {
  std::vector<double> t;
  std::array<std::vector<double>, 2> flex_fz, skel_fz, total_fz;
};

struct JointTraceData {
  std::vector<double> t;
  std::array<std::vector<double>, joint::count> joints;
};

GrfTrace grf_trace(const SimOutput& output);
JointTraceData joint_trace(const SimOutput& output);

void write_grf_csv(const std::filesystem::path& path, const SimOutput& out);
void write_joints_csv(const std::filesystem::path& path, const SimOutput& out);
void write_events_csv(const std::filesystem::path& path, const SimOutput& out);
GrfTrace read_grf_csv(const std::filesystem::path& path);
JointTraceData read_joints_csv(const std::filesystem::path& path);

}  // namespace softgait
