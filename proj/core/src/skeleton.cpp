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

#include "softgait/skeleton.hpp"

#include <cmath>

#include "softgait/error.hpp"

namespace softgait {

namespace joint {

const char* name(int id) {
  static const char* kNames[joint::count] = {"l_hip",  "l_knee", "l_ankle",
                                             "r_hip",  "r_knee", "r_ankle"};
  return kNames[id];
}

int from_name(const std::string& n) {
  for (int i = 0; i < joint::count; ++i) {
    if (n == name(i)) return i;
  }
  return -1;
}

Side side_of(int id) { return id < 3 ? Side::left : Side::right; }

}  // namespace joint

namespace {

// Sagittal hinge rotation: positive angle swings the downward axis (-z)
// toward +x (flexion forward) and raises the +x axis (toes up).
Mat3 sagittal_rotation(double angle) {
  return Eigen::AngleAxisd(-angle, Vec3::UnitY()).toRotationMatrix();
}

// d(rotation vector)/dq for a chain angle with coefficient `sign` on q.
Vec3 hinge_axis(double sign) { return Vec3(0.0, -sign, 0.0); }

}  // namespace

double SkeletonConfig::total_mass() const {
  return pelvis_mass + 2.0 * (thigh_mass + shank_mass + foot_mass);
}

JointLimits SkeletonConfig::limits(int joint_id) const {
  switch (joint_id % 3) {
    case 0: return hip_limits;
    case 1: return knee_limits;
    default: return ankle_limits;
  }
}

std::array<Segment, 7> SkeletonConfig::segments() const {
  // Rod inertia about the proximal hinge: m l^2 / 3; the foot uses its
  // box inertia transported to the ankle.
  const double thigh_i = thigh_mass * thigh_length * thigh_length / 3.0;
  const double shank_i = shank_mass * shank_length * shank_length / 3.0;
  const Vec3 fc = foot_proxy_center;
  const double foot_len = 2.0 * foot_proxy_half.x();
  const double foot_h = 2.0 * foot_proxy_half.z();
  const double foot_com_i =
      foot_mass * (foot_len * foot_len + foot_h * foot_h) / 12.0;
  const double foot_i =
      foot_com_i + foot_mass * (fc.x() * fc.x() + fc.z() * fc.z());

  std::array<Segment, 7> out;
  out[0] = {"pelvis", pelvis_mass, 0.0, 2.0 * hip_half_width,
            Vec3(0, 0, 0.1), Vec3(0.1, hip_half_width, 0.1), ""};
  const char* sides[2] = {"l", "r"};
  const char* joints[3] = {"hip", "knee", "ankle"};
  for (int s = 0; s < 2; ++s) {
    out[1 + 3 * s] = {std::string(sides[s]) + "_thigh", thigh_mass, thigh_i,
                      thigh_length, thigh_proxy_center, thigh_proxy_half,
                      std::string(sides[s]) + "_" + joints[0]};
    out[2 + 3 * s] = {std::string(sides[s]) + "_shank", shank_mass, shank_i,
                      shank_length, shank_proxy_center, shank_proxy_half,
                      std::string(sides[s]) + "_" + joints[1]};
    out[3 + 3 * s] = {std::string(sides[s]) + "_foot", foot_mass, foot_i,
                      2.0 * foot_proxy_half.x(), foot_proxy_center,
                      foot_proxy_half,
                      std::string(sides[s]) + "_" + joints[2]};
  }
  return out;
}

std::array<double, joint::count> SkeletonConfig::effective_inertias() const {
  // Rest pose: straight leg hanging down from the hip.
  const double lt = thigh_length, ls = shank_length;
  const Vec3 fc = foot_proxy_center;

  const double thigh_com_i = thigh_mass * lt * lt / 12.0;
  const double shank_com_i = shank_mass * ls * ls / 12.0;
  const double foot_len = 2.0 * foot_proxy_half.x();
  const double foot_h = 2.0 * foot_proxy_half.z();
  const double foot_com_i =
      foot_mass * (foot_len * foot_len + foot_h * foot_h) / 12.0;

  auto rod_term = [](double mass, double com_i, double dx, double dz) {
    return com_i + mass * (dx * dx + dz * dz);
  };

  const double ankle =
      rod_term(foot_mass, foot_com_i, fc.x(), fc.z());
  const double knee = rod_term(shank_mass, shank_com_i, 0.0, ls / 2.0) +
                      rod_term(foot_mass, foot_com_i, fc.x(), ls + fc.z());
  const double hip =
      rod_term(thigh_mass, thigh_com_i, 0.0, lt / 2.0) +
      rod_term(shank_mass, shank_com_i, 0.0, lt + ls / 2.0) +
      rod_term(foot_mass, foot_com_i, fc.x(), lt + ls + fc.z());

  return {hip, knee, ankle, hip, knee, ankle};
}

SkeletonKinematics forward_kinematics(const SkeletonConfig& config,
                                      const SkeletonState& state) {
  SkeletonKinematics k;
  const PelvisState& p = state.pelvis;

  k.pelvis.pose = Iso3::Identity();
  k.pelvis.pose.linear() = sagittal_rotation(p.pitch);
  k.pelvis.pose.translation() = Vec3(p.x, 0.0, p.z);
  k.pelvis.linear_velocity = Vec3(p.vx, 0.0, p.vz);
  k.pelvis.angular_velocity = -p.vpitch * Vec3::UnitY();

  for (int s = 0; s < 2; ++s) {
    const int hip_id = 3 * s + 0;
    const int knee_id = 3 * s + 1;
    const int ankle_id = 3 * s + 2;
    const double y = (s == 0 ? 1.0 : -1.0) * config.hip_half_width;

    const double a_thigh = p.pitch + state.q[hip_id];
    const double a_shank = a_thigh - state.q[knee_id];
    const double a_foot = a_shank + state.q[ankle_id];
    const double w_thigh = p.vpitch + state.qd[hip_id];
    const double w_shank = w_thigh - state.qd[knee_id];
    const double w_foot = w_shank + state.qd[ankle_id];

    const Vec3 hip =
        k.pelvis.pose * Vec3(0.0, y, 0.0);
    const Vec3 hip_v =
        k.pelvis.linear_velocity +
        k.pelvis.angular_velocity.cross(k.pelvis.pose.linear() *
                                        Vec3(0.0, y, 0.0));

    SegmentState& thigh = k.thigh[s];
    thigh.pose = Iso3::Identity();
    thigh.pose.linear() = sagittal_rotation(a_thigh);
    thigh.pose.translation() = hip;
    thigh.angular_velocity = -w_thigh * Vec3::UnitY();
    thigh.linear_velocity = hip_v;

    const Vec3 knee =
        thigh.pose * Vec3(0.0, 0.0, -config.thigh_length);
    const Vec3 knee_v =
        thigh.linear_velocity +
        thigh.angular_velocity.cross(knee - thigh.pose.translation());

    SegmentState& shank = k.shank[s];
    shank.pose = Iso3::Identity();
    shank.pose.linear() = sagittal_rotation(a_shank);
    shank.pose.translation() = knee;
    shank.angular_velocity = -w_shank * Vec3::UnitY();
    shank.linear_velocity = knee_v;

    const Vec3 ankle =
        shank.pose * Vec3(0.0, 0.0, -config.shank_length);
    const Vec3 ankle_v =
        shank.linear_velocity +
        shank.angular_velocity.cross(ankle - shank.pose.translation());

    SegmentState& foot = k.foot[s];
    foot.pose = Iso3::Identity();
    foot.pose.linear() = sagittal_rotation(a_foot);
    foot.pose.translation() = ankle;
    foot.angular_velocity = -w_foot * Vec3::UnitY();
    foot.linear_velocity = ankle_v;

    k.joint_position[hip_id] = hip;
    k.joint_position[knee_id] = knee;
    k.joint_position[ankle_id] = ankle;
    k.joint_axis[hip_id] = hinge_axis(+1.0);
    k.joint_axis[knee_id] = hinge_axis(-1.0);
    k.joint_axis[ankle_id] = hinge_axis(+1.0);
  }
  return k;
}

PdGains PdGains::uniform(double kp_value, double kd_value) {
  if (!(kp_value > 0.0) || !(kd_value >= 0.0)) {
    throw InputError("pd gains: kp must be > 0 and kd >= 0");
  }
  PdGains g;
  g.kp.fill(kp_value);
  g.kd.fill(kd_value);
  return g;
}

std::array<double, joint::count> pd_torques(
    const std::array<double, joint::count>& q,
    const std::array<double, joint::count>& qd,
    const std::array<double, joint::count>& q_ref, const PdGains& gains) {
  std::array<double, joint::count> tau{};
  for (int j = 0; j < joint::count; ++j) {
    tau[j] = gains.kp[j] * (q_ref[j] - q[j]) - gains.kd[j] * qd[j];
  }
  return tau;
}

std::array<Vec3, 8> proxy_corners(const SegmentState& state,
                                  const Vec3& center, const Vec3& half) {
  std::array<Vec3, 8> out;
  int n = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        const Vec3 local = center + Vec3(sx * half.x(), sy * half.y(),
                                         sz * half.z());
        out[n++] = state.pose * local;
      }
    }
  }
  return out;
}

Vec3 point_velocity(const SegmentState& state, const Vec3& world_point) {
  return state.linear_velocity +
         state.angular_velocity.cross(world_point - state.pose.translation());
}

}  // namespace softgait
