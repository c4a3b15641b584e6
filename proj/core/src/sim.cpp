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

#include "softgait/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "softgait/error.hpp"
#include "softgait/io.hpp"

namespace softgait {

MaterialMode material_mode_from_string(const std::string& name) {
  if (name == "spring") return MaterialMode::spring;
  if (name == "fem") return MaterialMode::fem;
  throw InputError("unknown material mode '" + name +
                   "' (expected spring or fem)");
}

const char* material_mode_name(MaterialMode mode) {
  return mode == MaterialMode::spring ? "spring" : "fem";
}

void WorldConfig::validate() const {
  if (!(resolved_dt() > 0.0)) {
    throw InputError("world: dt must be positive");
  }
  if (!(duration >= resolved_dt())) {
    throw InputError("world: duration must be at least one timestep");
  }
  if (!(plane.contact_stiffness > 0.0)) {
    throw InputError("contact: stiffness must be positive");
  }
  if (!(plane.friction_coefficient >= 0.0)) {
    throw InputError("contact: friction coefficient must be >= 0");
  }
  if (!(pd_kp > 0.0) || !(pd_kd >= 0.0)) {
    throw InputError("skeleton: kp must be > 0 and kd >= 0");
  }
  if (mode == MaterialMode::spring) {
    validate_material(spring);
  } else {
    validate_material(fem);
  }
}

namespace {

constexpr double kAbsoluteEnergyCeiling = 1e12;

struct FlexAssembly {
  std::vector<Vec3> explicit_force;       // elastic + gravity + external +
                                          // contact stiffness + friction
  std::vector<Vec3> elastic;              // elastic part alone
  std::vector<double> contact_damping;    // per-node z-dashpot for the solve
  double grf_vertical = 0.0;              // full penalty-law sums (logged)
  double grf_horizontal = 0.0;
  bool any_contact = false;
};

FlexAssembly assemble_flex_forces(const SoftBody& body, double gravity,
                                  const GroundPlane* plane,
                                  std::span<const Vec3> external, double dt) {
  FlexAssembly out;
  out.elastic = elastic_forces(body);
  out.explicit_force = out.elastic;
  out.contact_damping.assign(body.node_count(), 0.0);

  for (int i = 0; i < body.node_count(); ++i) {
    out.explicit_force[i].z() -= body.lattice.node_masses[i] * gravity;
    if (!external.empty()) out.explicit_force[i] += external[i];
  }
  if (plane == nullptr) return out;

  for (int i = 0; i < body.node_count(); ++i) {
    const double depth = plane->height - body.positions[i].z();
    if (depth <= 0.0) continue;
    const Vec3& v = body.velocities[i];
    const double fn_full = plane->contact_stiffness * depth +
                           plane->contact_damping * std::max(0.0, -v.z());
    out.explicit_force[i].z() += plane->contact_stiffness * depth;
    out.contact_damping[i] = plane->contact_damping;

    const Vec3 vt(v.x(), v.y(), 0.0);
    const double speed = vt.norm();
    if (speed > 1e-12) {
      const double mass = body.lattice.node_masses[i];
      const double ft =
          std::min({plane->contact_damping * speed,
                    plane->friction_coefficient * fn_full,
                    0.9 * mass * speed / dt});
      out.explicit_force[i] -= (ft / speed) * vt;
      out.grf_horizontal -= (ft / speed) * vt.x();
    }
    out.grf_vertical += fn_full;
    out.any_contact = true;
  }
  return out;
}

// Velocities first (material and contact damping taken implicitly), then
// positions. Nodes flagged in `hold` keep their current state.
void implicit_velocity_update(SoftBody& body, const FlexAssembly& assembly,
                              double dt, const std::vector<char>& hold) {
  const int n = body.node_count();
  bool material_damping = body.is_spring()
                              ? body.spring().damping > 0.0
                              : body.fem().damping_coefficient > 0.0;
  bool contact_damping = false;
  for (double c : assembly.contact_damping) {
    if (c > 0.0) contact_damping = true;
  }

  if (!material_damping && !contact_damping) {
    for (int i = 0; i < n; ++i) {
      if (hold[i]) continue;
      body.velocities[i] +=
          dt / body.lattice.node_masses[i] * assembly.explicit_force[i];
      body.positions[i] += dt * body.velocities[i];
    }
    return;
  }

  Eigen::MatrixXd damping = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  add_damping_matrix(body, damping);
  for (int i = 0; i < n; ++i) {
    damping(3 * i + 2, 3 * i + 2) += assembly.contact_damping[i];
  }

  std::vector<int> free_dofs;
  free_dofs.reserve(3 * n);
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(3 * n);
  Eigen::VectorXd held_velocity = Eigen::VectorXd::Zero(3 * n);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      (hold[i] ? held_velocity : velocity)(3 * i + c) =
          body.velocities[i][c];
      if (!hold[i]) free_dofs.push_back(3 * i + c);
    }
  }

  const int nf = int(free_dofs.size());
  if (nf == 0) return;
  const Eigen::VectorXd coupled = damping * held_velocity;

  Eigen::MatrixXd lhs(nf, nf);
  Eigen::VectorXd rhs(nf);
  for (int r = 0; r < nf; ++r) {
    const int dr = free_dofs[r];
    const int node = dr / 3;
    const double mass = body.lattice.node_masses[node];
    for (int c = 0; c < nf; ++c) {
      lhs(r, c) = dt * damping(dr, free_dofs[c]);
    }
    lhs(r, r) += mass;
    rhs(r) = mass * velocity(dr) +
             dt * (assembly.explicit_force[node][dr % 3] - coupled(dr));
  }

  const Eigen::VectorXd solved = lhs.ldlt().solve(rhs);
  for (int r = 0; r < nf; ++r) {
    const int dr = free_dofs[r];
    body.velocities[dr / 3][dr % 3] = solved(r);
  }
  for (int i = 0; i < n; ++i) {
    if (!hold[i]) body.positions[i] += dt * body.velocities[i];
  }
}

double segment_com_inertia(const Segment& seg) {
  // Rod for limbs, box for the rest.
  if (seg.name.find("thigh") != std::string::npos ||
      seg.name.find("shank") != std::string::npos) {
    return seg.mass * seg.length * seg.length / 12.0;
  }
  const double lx = 2.0 * seg.proxy_half_extents.x();
  const double lz = 2.0 * seg.proxy_half_extents.z();
  return seg.mass * (lx * lx + lz * lz) / 12.0;
}

}  // namespace

void step_soft_body(SoftBody& body, const SoftBodyStepOptions& options) {
  std::vector<char> hold(body.node_count(), false);
  for (int i : options.fixed_nodes) hold[i] = true;
  for (int i = 0; i < body.node_count(); ++i) {
    if (body.pinned[i]) hold[i] = true;
  }
  const FlexAssembly assembly =
      assemble_flex_forces(body, options.gravity, options.plane,
                           options.external_forces, options.dt);
  implicit_velocity_update(body, assembly, options.dt, hold);
}

World::World(const WorldConfig& config, const SurfaceMesh* foot_left,
             const SurfaceMesh* foot_right, ReferenceMotion reference)
    : config_(config), reference_(std::move(reference)) {
  config_.validate();
  reference_.validate();
  dt_ = config_.resolved_dt();
  inertia_ = config_.skeleton.effective_inertias();

  const ReferenceSample start = reference_.sample(0.0);
  state_.pelvis = start.pelvis;
  state_.q = start.angles;
  state_.qd = start.rates;

  double flex_weight = 0.0;
  if (config_.flex_enabled() && config_.attach_feet) {
    const SkeletonKinematics kin =
        forward_kinematics(config_.skeleton, state_);
    const SurfaceMesh* meshes[2] = {foot_left, foot_right};
    for (int s = 0; s < 2; ++s) {
      if (meshes[s] == nullptr) {
        throw InputError(std::string("world: no ") +
                         side_name(side_from_index(s)) +
                         " foot mesh supplied for a flex-enabled scenario");
      }
      VolumetricLattice lattice =
          build_lattice(*meshes[s], config_.flex_density);
      std::variant<SpringMaterial, FemMaterial> material;
      if (config_.mode == MaterialMode::spring) {
        material = config_.spring;
      } else {
        material = config_.fem;
      }
      SoftBody body = SoftBody::create(std::move(lattice), material);

      const Side side = side_from_index(s);
      Iso3 local = Iso3::Identity();
      local.translation() =
          Vec3(config_.placement.anchor_x, 0.0,
               config_.placement.anchor_z - config_.placement.offset(side));
      const SegmentState& foot = kin.foot[s];
      body.apply_transform(foot.pose * local);
      for (int i = 0; i < body.node_count(); ++i) {
        body.velocities[i] = point_velocity(foot, body.positions[i]);
      }

      pins_[s] = bind_pins(body, foot, config_.skeleton.foot_proxy_center,
                           config_.skeleton.foot_proxy_half, side,
                           config_.pin_params);
      for (const Pin& pin : pins_[s]) body.pinned[pin.node] = true;
      flex_weight += body.lattice.total_mass() * config_.gravity;
      feet_[s] = std::move(body);
    }
  }
  output_.body_weight =
      config_.skeleton.total_mass() * config_.gravity + flex_weight;

  const int planned = int(std::llround(config_.duration / dt_));
  energy_window_ = std::min(100, std::max(2, planned / 4));
}

double World::total_energy_now() const {
  const SkeletonKinematics kin = forward_kinematics(config_.skeleton, state_);
  double energy = 0.0;

  const auto segments = config_.skeleton.segments();
  auto add_segment = [&](const Segment& seg, const SegmentState& st,
                         const Vec3& com_local) {
    const Vec3 com = st.pose * com_local;
    const Vec3 v = point_velocity(st, com);
    energy += 0.5 * seg.mass * v.squaredNorm();
    energy += 0.5 * segment_com_inertia(seg) * st.angular_velocity.squaredNorm();
    energy += seg.mass * config_.gravity * com.z();
  };
  add_segment(segments[0], kin.pelvis, Vec3::Zero());
  for (int s = 0; s < 2; ++s) {
    add_segment(segments[1 + 3 * s], kin.thigh[s],
                Vec3(0, 0, -config_.skeleton.thigh_length / 2.0));
    add_segment(segments[2 + 3 * s], kin.shank[s],
                Vec3(0, 0, -config_.skeleton.shank_length / 2.0));
    add_segment(segments[3 + 3 * s], kin.foot[s],
                config_.skeleton.foot_proxy_center);
  }

  for (int s = 0; s < 2; ++s) {
    if (feet_[s]) energy += total_energy(*feet_[s], config_.gravity);
  }
  return energy;
}

void World::check_finite() const {
  auto bad = [](double v) { return !std::isfinite(v); };
  for (int j = 0; j < joint::count; ++j) {
    if (bad(state_.q[j]) || bad(state_.qd[j])) {
      throw PhysicsError("non-finite joint state");
    }
  }
  for (int s = 0; s < 2; ++s) {
    if (!feet_[s]) continue;
    for (const Vec3& p : feet_[s]->positions) {
      if (bad(p.x()) || bad(p.y()) || bad(p.z())) {
        throw PhysicsError("non-finite flex position");
      }
    }
    for (const Vec3& v : feet_[s]->velocities) {
      if (bad(v.x()) || bad(v.y()) || bad(v.z())) {
        throw PhysicsError("non-finite flex velocity");
      }
    }
  }
}

void World::step() {
  const double t = time_;
  const SkeletonKinematics kin = forward_kinematics(config_.skeleton, state_);
  const ReferenceSample ref = reference_.sample(t);
  const auto segments = config_.skeleton.segments();

  std::array<double, joint::count> torque{};
  std::array<double, joint::count> damping{};
  for (int j = 0; j < joint::count; ++j) {
    torque[j] = config_.pd_kp * (ref.angles[j] - state_.q[j]);
    if (config_.velocity_feedforward) {
      torque[j] += config_.pd_kd * ref.rates[j];
    }
    damping[j] = config_.pd_kd;
  }

  GrfRow row;
  std::array<bool, 2> skel_contact = {false, false};
  std::array<double, 2> skel_peak = {0.0, 0.0};

  // Skeleton leg segments: gravity and ground-contact torques. The
  // contact damping term goes into the implicit joint denominator.
  for (int s = 0; s < 2; ++s) {
    const int ancestors[3] = {3 * s + 0, 3 * s + 1, 3 * s + 2};
    struct Leg {
      const SegmentState* state;
      const Segment* seg;
      Vec3 com_local;
      int depth;  // how many ancestor joints act on it
    };
    const Leg leg[3] = {
        {&kin.thigh[s], &segments[1 + 3 * s],
         Vec3(0, 0, -config_.skeleton.thigh_length / 2.0), 1},
        {&kin.shank[s], &segments[2 + 3 * s],
         Vec3(0, 0, -config_.skeleton.shank_length / 2.0), 2},
        {&kin.foot[s], &segments[3 + 3 * s],
         config_.skeleton.foot_proxy_center, 3},
    };
    for (const Leg& part : leg) {
      const Vec3 com = part.state->pose * part.com_local;
      const Vec3 gravity_force(0.0, 0.0,
                               -part.seg->mass * config_.gravity);
      // With gravity compensation the drive feeds the current-pose
      // gravity torque forward, cancelling the sag term exactly.
      if (!config_.gravity_compensation) {
        for (int a = 0; a < part.depth; ++a) {
          const int j = ancestors[a];
          torque[j] += kin.joint_axis[j].dot(
              (com - kin.joint_position[j]).cross(gravity_force));
        }
      }

      const auto corners = proxy_corners(*part.state, part.seg->proxy_center,
                                         part.seg->proxy_half_extents);
      for (const Vec3& corner : corners) {
        const double depth = config_.plane.height - corner.z();
        if (depth <= 0.0) continue;
        const Vec3 v = point_velocity(*part.state, corner);
        const double fn_full =
            config_.plane.contact_stiffness * depth +
            config_.plane.contact_damping * std::max(0.0, -v.z());
        Vec3 f(0.0, 0.0, config_.plane.contact_stiffness * depth);
        const Vec3 vt(v.x(), v.y(), 0.0);
        const double speed = vt.norm();
        if (speed > 1e-12) {
          const double ft =
              std::min(config_.plane.contact_damping * speed,
                       config_.plane.friction_coefficient * fn_full);
          f -= (ft / speed) * vt;
        }
        for (int a = 0; a < part.depth; ++a) {
          const int j = ancestors[a];
          const Vec3 arm = corner - kin.joint_position[j];
          torque[j] += kin.joint_axis[j].dot(arm.cross(f));
          const double lever = (kin.joint_axis[j].cross(arm)).z();
          damping[j] += config_.plane.contact_damping * lever * lever;
        }
        row.skel_fz[s] += fn_full;
        skel_contact[s] = true;
        skel_peak[s] = std::max(skel_peak[s], fn_full);
      }
    }
  }

  // Flex feet: assemble forces, add the pin reaction to the leg joints,
  // then advance the free nodes with implicit damping.
  std::array<FlexAssembly, 2> assembly;
  for (int s = 0; s < 2; ++s) {
    if (!feet_[s]) continue;
    SoftBody& body = *feet_[s];
    assembly[s] = assemble_flex_forces(body, config_.gravity, &config_.plane,
                                       {}, dt_);
    row.flex_fz[s] = assembly[s].grf_vertical;

    // Pin reaction onto the skeleton: elastic + contact + weight of each
    // pinned node, all already summed in the explicit force.
    const int ancestors[3] = {3 * s + 0, 3 * s + 1, 3 * s + 2};
    for (const Pin& pin : pins_[s]) {
      const Vec3 reaction = assembly[s].explicit_force[pin.node];
      for (int a = 0; a < 3; ++a) {
        const int j = ancestors[a];
        torque[j] += kin.joint_axis[j].dot(
            (body.positions[pin.node] - kin.joint_position[j])
                .cross(reaction));
      }
    }

    std::vector<char> hold(body.node_count(), false);
    for (int i = 0; i < body.node_count(); ++i) {
      if (body.pinned[i]) hold[i] = true;
    }
    implicit_velocity_update(body, assembly[s], dt_, hold);
  }

  // Joint velocity update with implicit damping, then positions.
  for (int j = 0; j < joint::count; ++j) {
    const double inertia = inertia_[j];
    state_.qd[j] = (state_.qd[j] + dt_ * torque[j] / inertia) /
                   (1.0 + dt_ * damping[j] / inertia);
    state_.q[j] += dt_ * state_.qd[j];
    const JointLimits limits = config_.skeleton.limits(j);
    if (state_.q[j] < limits.lo) {
      state_.q[j] = limits.lo;
      if (state_.qd[j] < 0.0) state_.qd[j] = 0.0;
    } else if (state_.q[j] > limits.hi) {
      state_.q[j] = limits.hi;
      if (state_.qd[j] > 0.0) state_.qd[j] = 0.0;
    }
  }

  // Kinematically guided pelvis.
  const ReferenceSample next = reference_.sample(t + dt_);
  state_.pelvis = next.pelvis;

  // Pin projection after integration keeps the hard-attachment invariant
  // on every logged frame.
  const SkeletonKinematics kin_new =
      forward_kinematics(config_.skeleton, state_);
  for (int s = 0; s < 2; ++s) {
    if (feet_[s]) apply_pins(pins_[s], kin_new.foot[s], *feet_[s]);
  }

  time_ = t + dt_;
  ++step_count_;
  row.t = time_;
  for (int s = 0; s < 2; ++s) {
    if (feet_[s]) row.flex_fz[s] = assembly[s].grf_vertical;
  }

  try {
    check_finite();
  } catch (const PhysicsError& e) {
    throw PhysicsError(std::string(e.what()) + " at step " +
                       std::to_string(step_count_));
  }
  log_step(row, skel_contact, skel_peak, t);
}

void World::log_step(const GrfRow& row, const std::array<bool, 2>& skel_contact,
                     const std::array<double, 2>& skel_peak, double t_before) {
  output_.time.push_back(time_);
  output_.grf.push_back(row);
  output_.joints.push_back(state_.q);
  for (int s = 0; s < 2; ++s) {
    const Side side = side_from_index(s);
    output_.grf_samples.push_back(
        {time_, side, row.flex_fz[s], 0.0, GrfSource::flex});
    output_.grf_samples.push_back(
        {time_, side, row.skel_fz[s], 0.0, GrfSource::skeleton});
    tracker_.update(side, skel_contact[s], skel_peak[s], t_before);
  }
  output_.energy.push_back(total_energy_now());
}

SimOutput World::run() {
  const int planned = int(std::llround(config_.duration / dt_));
  for (int k = 0; k < planned; ++k) {
    try {
      step();
    } catch (const PhysicsError& e) {
      output_.stable = false;
      output_.failure_time = time_;
      output_.failure_step = step_count_;
      output_.failure_reason = e.what();
      break;
    }

    const double e = output_.energy.back();
    if (!std::isfinite(e) || std::abs(e) > kAbsoluteEnergyCeiling ||
        (energy_threshold_ > 0.0 && e > energy_threshold_)) {
      output_.stable = false;
      output_.failure_time = time_;
      output_.failure_step = step_count_;
      output_.failure_reason = "total energy diverging";
      break;
    }
    if (energy_threshold_ < 0.0 &&
        int(output_.energy.size()) >= energy_window_) {
      std::vector<double> window(output_.energy.begin(),
                                 output_.energy.begin() + energy_window_);
      std::nth_element(window.begin(), window.begin() + window.size() / 2,
                       window.end());
      const double median = window[window.size() / 2];
      if (median > 0.0) energy_threshold_ = 10.0 * median;
    }
  }
  tracker_.finish();
  output_.events = tracker_.events();
  return output_;
}

SimOutput run_simulation(const WorldConfig& config,
                         const SurfaceMesh* foot_left,
                         const SurfaceMesh* foot_right,
                         const ReferenceMotion& reference) {
  World world(config, foot_left, foot_right, reference);
  return world.run();
}

StabilityReport check_stability(std::span<const double> energy) {
  if (energy.size() < 2) {
    throw InputError("check_stability: need at least 2 energy samples");
  }
  for (size_t i = 0; i < energy.size(); ++i) {
    if (!std::isfinite(energy[i])) {
      return {Stability::diverging, int(i)};
    }
  }
  const int n = int(energy.size());
  const int window = std::min(100, std::max(2, n / 4));
  std::vector<double> head(energy.begin(), energy.begin() + window);
  std::nth_element(head.begin(), head.begin() + window / 2, head.end());
  const double median = head[window / 2];
  const double threshold =
      median > 0.0 ? 10.0 * median : kAbsoluteEnergyCeiling;
  for (int i = 0; i < n; ++i) {
    if (energy[i] > threshold) {
      return {Stability::diverging, i};
    }
  }
  return {Stability::ok, -1};
}

GrfTrace grf_trace(const SimOutput& output) {
  GrfTrace trace;
  trace.t = output.time;
  for (size_t i = 0; i < output.grf.size(); ++i) {
    const GrfRow& row = output.grf[i];
    for (int s = 0; s < 2; ++s) {
      trace.flex_fz[s].push_back(row.flex_fz[s]);
      trace.skel_fz[s].push_back(row.skel_fz[s]);
      trace.total_fz[s].push_back(row.flex_fz[s] + row.skel_fz[s]);
    }
  }
  return trace;
}

JointTraceData joint_trace(const SimOutput& output) {
  JointTraceData trace;
  trace.t = output.time;
  for (const auto& q : output.joints) {
    for (int j = 0; j < joint::count; ++j) trace.joints[j].push_back(q[j]);
  }
  return trace;
}

namespace {

const std::vector<std::string>& grf_columns() {
  static const std::vector<std::string> kColumns = {
      "t",
      "left_flex_fz",
      "left_skel_fz",
      "left_total_fz",
      "right_flex_fz",
      "right_skel_fz",
      "right_total_fz"};
  return kColumns;
}

const std::vector<std::string>& joint_columns() {
  static const std::vector<std::string> kColumns = {
      "t", "l_hip", "l_knee", "l_ankle", "r_hip", "r_knee", "r_ankle"};
  return kColumns;
}

}  // namespace

void write_grf_csv(const std::filesystem::path& path, const SimOutput& out) {
  std::vector<std::vector<double>> rows;
  rows.reserve(out.grf.size());
  for (const GrfRow& row : out.grf) {
    rows.push_back({row.t, row.flex_fz[0], row.skel_fz[0],
                    row.flex_fz[0] + row.skel_fz[0], row.flex_fz[1],
                    row.skel_fz[1], row.flex_fz[1] + row.skel_fz[1]});
  }
  write_numeric_csv(path, grf_columns(), rows);
}

void write_joints_csv(const std::filesystem::path& path,
                      const SimOutput& out) {
  std::vector<std::vector<double>> rows;
  rows.reserve(out.joints.size());
  for (size_t i = 0; i < out.joints.size(); ++i) {
    std::vector<double> row = {out.time[i]};
    for (int j = 0; j < joint::count; ++j) row.push_back(out.joints[i][j]);
    rows.push_back(std::move(row));
  }
  write_numeric_csv(path, joint_columns(), rows);
}

void write_events_csv(const std::filesystem::path& path,
                      const SimOutput& out) {
  std::vector<std::vector<double>> rows;
  for (const ContactEvent& e : out.events) {
    rows.push_back({e.time, double(side_index(e.side)), e.peak_force});
  }
  write_numeric_csv(path, {"t", "side", "peak_force"}, rows);
}

GrfTrace read_grf_csv(const std::filesystem::path& path) {
  const NumericTable table = read_numeric_csv(path);
  for (const std::string& c : grf_columns()) {
    if (table.column(c) < 0) {
      throw InputError(path.string() + ": missing column '" + c + "'");
    }
  }
  GrfTrace trace;
  trace.t = table.extract(table.column("t"));
  trace.flex_fz[0] = table.extract(table.column("left_flex_fz"));
  trace.skel_fz[0] = table.extract(table.column("left_skel_fz"));
  trace.total_fz[0] = table.extract(table.column("left_total_fz"));
  trace.flex_fz[1] = table.extract(table.column("right_flex_fz"));
  trace.skel_fz[1] = table.extract(table.column("right_skel_fz"));
  trace.total_fz[1] = table.extract(table.column("right_total_fz"));
  return trace;
}

JointTraceData read_joints_csv(const std::filesystem::path& path) {
  const NumericTable table = read_numeric_csv(path);
  JointTraceData trace;
  const int tcol = table.column("t");
  if (tcol < 0) {
    throw InputError(path.string() + ": missing column 't'");
  }
  trace.t = table.extract(tcol);
  for (int j = 0; j < joint::count; ++j) {
    const int col = table.column(joint::name(j));
    if (col < 0) {
      throw InputError(path.string() + ": missing column '" +
                       joint::name(j) + "'");
    }
    trace.joints[j] = table.extract(col);
  }
  return trace;
}

}  // namespace softgait
