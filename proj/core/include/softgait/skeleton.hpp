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

#include "softgait/types.hpp"

namespace softgait {

// Sagittal-plane biped: pelvis + 2 x (thigh, shank, foot), hinge joints
// about the lateral (y) axis. World frame: x forward, y left, z up.
//
// Sign conventions: hip flexion (thigh forward) positive, knee flexion
// (shank backward) positive, ankle dorsiflexion (toes up) positive.

namespace joint {
enum Id : int { l_hip, l_knee, l_ankle, r_hip, r_knee, r_ankle, count };
const char* name(int id);
int from_name(const std::string& name);  // -1 when unknown
Side side_of(int id);
}  // namespace joint

struct Segment {
  std::string name;
  double mass = 0.0;               // kg
  double inertia_about_joint = 0;  // kg*m^2, about its proximal hinge
  double length = 0.0;             // m
  Vec3 proxy_center = Vec3::Zero();       // collision box, segment frame
  Vec3 proxy_half_extents = Vec3::Zero();
  std::string parent_joint;
};

struct JointLimits {
  double lo = -1.5, hi = 1.5;
};

struct SkeletonConfig {
  double pelvis_mass = 6.0;
  double thigh_mass = 2.0, thigh_length = 0.4;
  double shank_mass = 1.0, shank_length = 0.4;
  double foot_mass = 0.5;
  double hip_half_width = 0.08;

  // Foot frame sits at the ankle; sole forward is +x.
  Vec3 foot_proxy_center{0.06, 0.0, -0.030};
  Vec3 foot_proxy_half{0.10, 0.035, 0.012};
  Vec3 shank_proxy_center{0.0, 0.0, -0.2};
  Vec3 shank_proxy_half{0.04, 0.04, 0.20};
  Vec3 thigh_proxy_center{0.0, 0.0, -0.2};
  Vec3 thigh_proxy_half{0.05, 0.05, 0.20};

  JointLimits hip_limits{-1.5, 1.5};
  JointLimits knee_limits{-0.05, 2.6};
  JointLimits ankle_limits{-1.5, 1.5};

  double total_mass() const;
  JointLimits limits(int joint_id) const;
  std::array<Segment, 7> segments() const;  // pelvis, l/r thigh, shank, foot

  // Effective subtree inertia about each joint, evaluated at the rest
  // pose (all angles zero) and frozen.
  std::array<double, joint::count> effective_inertias() const;
};

struct PelvisState {
  double x = 0.0, z = 0.0, pitch = 0.0;
  double vx = 0.0, vz = 0.0, vpitch = 0.0;
};

struct SkeletonState {
  PelvisState pelvis;
  std::array<double, joint::count> q{};   // rad
  std::array<double, joint::count> qd{};  // rad/s
};

// Rigid state of one segment: pose plus the velocity of the frame origin
// and the angular velocity.
struct SegmentState {
  Iso3 pose = Iso3::Identity();
  Vec3 linear_velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

struct SkeletonKinematics {
  SegmentState pelvis;
  std::array<SegmentState, 2> thigh, shank, foot;  // [left, right]
  std::array<Vec3, joint::count> joint_position;
  std::array<Vec3, joint::count> joint_axis;  // generalized rotation axis

  const SegmentState& foot_state(Side s) const {
    return foot[side_index(s)];
  }
};

// Positions, orientations and rigid velocities of every segment.
SkeletonKinematics forward_kinematics(const SkeletonConfig& config,
                                      const SkeletonState& state);

struct PdGains {
  std::array<double, joint::count> kp;
  std::array<double, joint::count> kd;

  static PdGains uniform(double kp_value = 300.0, double kd_value = 30.0);
};

// tau = kp (q_ref - q) - kd qd, per joint.
std::array<double, joint::count> pd_torques(
    const std::array<double, joint::count>& q,
    const std::array<double, joint::count>& qd,
    const std::array<double, joint::count>& q_ref, const PdGains& gains);

// World-frame corners of a segment's collision box.
std::array<Vec3, 8> proxy_corners(const SegmentState& state,
                                  const Vec3& center, const Vec3& half);

// Velocity of a world point rigidly attached to a segment.
Vec3 point_velocity(const SegmentState& state, const Vec3& world_point);

}  // namespace softgait
