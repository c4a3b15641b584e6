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

#include "softgait/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "softgait/error.hpp"
#include "softgait/sim.hpp"
#include "softgait/softbody.hpp"

namespace softgait {

namespace {

constexpr double kDeflectionTolerance = 0.10;
constexpr double kSettlingTolerance = 0.20;
constexpr double kStiffnessLow = 1e-9;  // extended below 1 so the
                                        // vanishing-modulus limit stays
                                        // representable
constexpr double kStiffnessHigh = 1e7;
constexpr double kSettleBand = 0.02;
constexpr double kSettleHorizon = 3.0;

struct LoadCase {
  std::vector<int> bottom;
  std::vector<int> top;
  std::vector<int> free_dofs;
  std::vector<char> fixed_mask;
};

LoadCase select_nodes(const VolumetricLattice& lattice) {
  double zmin = lattice.nodes.front().z(), zmax = zmin;
  for (const Vec3& p : lattice.nodes) {
    zmin = std::min(zmin, p.z());
    zmax = std::max(zmax, p.z());
  }
  const double height = zmax - zmin;
  if (!(height > 0.0)) {
    throw InputError("calibrate: lattice has no height");
  }

  LoadCase out;
  for (double band : {0.10, 0.15, 0.20, 0.30}) {
    out.bottom.clear();
    out.top.clear();
    for (int i = 0; i < int(lattice.nodes.size()); ++i) {
      const double z = lattice.nodes[i].z();
      if (z <= zmin + band * height) out.bottom.push_back(i);
      if (z >= zmax - band * height) out.top.push_back(i);
    }
    if (out.bottom.size() >= 3 && out.top.size() >= 1) break;
  }
  if (out.bottom.size() < 3 || out.top.empty()) {
    throw InputError("calibrate: cannot pick bottom/top node bands");
  }

  out.fixed_mask.assign(lattice.nodes.size(), false);
  for (int i : out.bottom) out.fixed_mask[i] = true;
  for (int i = 0; i < int(lattice.nodes.size()); ++i) {
    if (out.fixed_mask[i]) continue;
    for (int c = 0; c < 3; ++c) out.free_dofs.push_back(3 * i + c);
  }
  return out;
}

// Static solve of K u = f with the bottom nodes clamped; returns the mean
// downward displacement of the top nodes.
double static_deflection(const Eigen::MatrixXd& stiffness,
                         const LoadCase& load_case, double test_load) {
  const int nf = int(load_case.free_dofs.size());
  Eigen::MatrixXd a(nf, nf);
  for (int r = 0; r < nf; ++r) {
    for (int c = 0; c < nf; ++c) {
      a(r, c) = stiffness(load_case.free_dofs[r], load_case.free_dofs[c]);
    }
  }
  // Tiny diagonal shift keeps near-mechanism spring networks solvable.
  const double shift = 1e-10 * a.diagonal().cwiseAbs().maxCoeff() + 1e-30;
  a.diagonal().array() += shift;

  Eigen::VectorXd f = Eigen::VectorXd::Zero(nf);
  const double per_node = test_load / double(load_case.top.size());
  for (int r = 0; r < nf; ++r) {
    const int dof = load_case.free_dofs[r];
    if (dof % 3 != 2) continue;
    const int node = dof / 3;
    if (std::find(load_case.top.begin(), load_case.top.end(), node) !=
        load_case.top.end()) {
      f(r) = -per_node;
    }
  }

  const Eigen::VectorXd u = a.ldlt().solve(f);
  double sum = 0.0;
  int count = 0;
  for (int r = 0; r < nf; ++r) {
    const int dof = load_case.free_dofs[r];
    if (dof % 3 != 2) continue;
    const int node = dof / 3;
    if (std::find(load_case.top.begin(), load_case.top.end(), node) !=
        load_case.top.end()) {
      sum += u(r);
      ++count;
    }
  }
  if (count == 0) {
    // All top nodes clamped; fall back to the largest downward motion.
    for (int r = 0; r < nf; ++r) {
      if (load_case.free_dofs[r] % 3 == 2) sum = std::min(sum, u(r));
    }
    return -sum;
  }
  return -sum / double(count);
}

Eigen::MatrixXd spring_stiffness_matrix(const VolumetricLattice& lattice,
                                        double k) {
  const int n = int(lattice.nodes.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (const LatticeEdge& e : lattice.edges) {
    const Vec3 d = lattice.nodes[e.i] - lattice.nodes[e.j];
    const Vec3 u = d / d.norm();
    const Mat3 block = k * (u * u.transpose());
    out.block<3, 3>(3 * e.i, 3 * e.i) += block;
    out.block<3, 3>(3 * e.j, 3 * e.j) += block;
    out.block<3, 3>(3 * e.i, 3 * e.j) -= block;
    out.block<3, 3>(3 * e.j, 3 * e.i) -= block;
  }
  return out;
}

Eigen::MatrixXd fem_stiffness_matrix(const VolumetricLattice& lattice,
                                     const FemMaterial& material) {
  // Reuse the per-tet matrices precomputed by SoftBody::create.
  SoftBody body = SoftBody::create(lattice, material);
  const int n = int(lattice.nodes.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (size_t t = 0; t < lattice.tetrahedra.size(); ++t) {
    const auto& tet = lattice.tetrahedra[t];
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        out.block<3, 3>(3 * tet[a], 3 * tet[b]) +=
            body.tets[t].stiffness.block<3, 3>(3 * a, 3 * b);
      }
    }
  }
  return out;
}

// Step-load settling time of one body, measured on the mean top-node
// height against the static deflection (2% band, retrospective).
double settling_time(SoftBody body, const LoadCase& load_case,
                     double test_load, double target_deflection, double dt) {
  std::vector<Vec3> external(body.node_count(), Vec3::Zero());
  const double per_node = test_load / double(load_case.top.size());
  for (int i : load_case.top) external[i] = Vec3(0.0, 0.0, -per_node);

  SoftBodyStepOptions options;
  options.dt = dt;
  options.gravity = 0.0;
  options.external_forces = external;
  options.fixed_nodes = load_case.bottom;

  auto top_drop = [&]() {
    double sum = 0.0;
    for (int i : load_case.top) {
      sum += body.lattice.nodes[i].z() - body.positions[i].z();
    }
    return sum / double(load_case.top.size());
  };

  const int steps = int(kSettleHorizon / dt);
  std::vector<double> drop;
  drop.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    step_soft_body(body, options);
    drop.push_back(top_drop());
    if (!std::isfinite(drop.back())) {
      return kSettleHorizon;  // diverged; treated as never settling
    }
  }

  const double band = kSettleBand * std::abs(target_deflection) + 1e-12;
  int last_outside = -1;
  for (int k = 0; k < steps; ++k) {
    if (std::abs(drop[k] - target_deflection) > band) last_outside = k;
  }
  return (last_outside + 1) * dt;
}

double stable_dt(const VolumetricLattice& lattice,
                 const Eigen::MatrixXd& stiffness) {
  // Gershgorin-style bound on the highest frequency.
  double worst = 0.0;
  for (int i = 0; i < int(lattice.nodes.size()); ++i) {
    double row = 0.0;
    for (int j = 0; j < int(lattice.nodes.size()); ++j) {
      row += stiffness.block<3, 3>(3 * i, 3 * j).cwiseAbs().maxCoeff();
    }
    worst = std::max(worst, row / lattice.node_masses[i]);
  }
  if (worst <= 0.0) return 1e-3;
  return std::clamp(0.3 / std::sqrt(worst), 1e-6, 1e-3);
}

}  // namespace

CalibrationResult calibrate(const FemMaterial& fem,
                            const VolumetricLattice& lattice,
                            double test_load) {
  validate_material(fem);
  validate_lattice(lattice);
  if (!(test_load > 0.0)) {
    throw InputError("calibrate: test load must be positive");
  }
  if (lattice.tetrahedra.empty()) {
    throw InputError("calibrate: lattice has no tetrahedra");
  }

  const LoadCase load_case = select_nodes(lattice);
  const Eigen::MatrixXd fem_k = fem_stiffness_matrix(lattice, fem);
  const double fem_deflection =
      static_deflection(fem_k, load_case, test_load);
  if (!(fem_deflection > 0.0)) {
    throw CalibrationError("calibrate: continuum solve produced no downward "
                           "deflection", -1.0);
  }

  auto spring_deflection_at = [&](double k) {
    return static_deflection(spring_stiffness_matrix(lattice, k), load_case,
                             test_load);
  };

  // Deflection decreases monotonically with stiffness; bracket then bisect.
  double lo = kStiffnessLow, hi = kStiffnessHigh;
  const double d_lo = spring_deflection_at(lo);
  const double d_hi = spring_deflection_at(hi);
  if (d_lo < fem_deflection || d_hi > fem_deflection) {
    const double best =
        std::min(std::abs(d_lo - fem_deflection),
                 std::abs(d_hi - fem_deflection)) /
        fem_deflection;
    throw CalibrationError(
        "calibrate: no stiffness in range matches the continuum deflection",
        best);
  }
  for (int it = 0; it < 200 && (hi - lo) / hi > 1e-9; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (spring_deflection_at(mid) > fem_deflection) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double stiffness = std::sqrt(lo * hi);
  const double spring_defl = spring_deflection_at(stiffness);
  const double deflection_error =
      std::abs(spring_defl - fem_deflection) / fem_deflection;
  if (deflection_error > kDeflectionTolerance) {
    throw CalibrationError(
        "calibrate: best stiffness misses the continuum deflection",
        deflection_error);
  }

  // Settling-time match for the damping value.
  const double dt_fem = stable_dt(lattice, fem_k);
  SoftBody fem_body = SoftBody::create(lattice, fem);
  const double fem_settle =
      settling_time(fem_body, load_case, test_load, fem_deflection, dt_fem);

  const Eigen::MatrixXd spring_k =
      spring_stiffness_matrix(lattice, stiffness);
  const double dt_spring = stable_dt(lattice, spring_k);

  auto spring_settle_at = [&](double c) {
    SoftBody body =
        SoftBody::create(lattice, SpringMaterial{stiffness, c});
    return settling_time(body, load_case, test_load, spring_defl, dt_spring);
  };

  double best_c = 0.0;
  double best_err = std::numeric_limits<double>::max();
  double best_settle = 0.0;
  for (int i = 0; i <= 28; ++i) {
    const double c = std::pow(10.0, -2.0 + 7.0 * i / 28.0);
    const double settle = spring_settle_at(c);
    const double err = std::abs(settle - fem_settle);
    if (err < best_err) {
      best_err = err;
      best_c = c;
      best_settle = settle;
    }
  }
  // Local refinement around the best grid point.
  double c_lo = best_c / std::pow(10.0, 7.0 / 28.0);
  double c_hi = best_c * std::pow(10.0, 7.0 / 28.0);
  for (int it = 0; it < 12; ++it) {
    const double c1 = c_lo + (c_hi - c_lo) / 3.0;
    const double c2 = c_hi - (c_hi - c_lo) / 3.0;
    const double e1 = std::abs(spring_settle_at(c1) - fem_settle);
    const double e2 = std::abs(spring_settle_at(c2) - fem_settle);
    if (e1 < e2) {
      c_hi = c2;
      if (e1 < best_err) {
        best_err = e1;
        best_c = c1;
        best_settle = spring_settle_at(c1);
      }
    } else {
      c_lo = c1;
      if (e2 < best_err) {
        best_err = e2;
        best_c = c2;
        best_settle = spring_settle_at(c2);
      }
    }
  }

  const double settling_error =
      fem_settle > 0.0 ? std::abs(best_settle - fem_settle) / fem_settle : 0.0;
  if (settling_error > kSettlingTolerance) {
    throw CalibrationError(
        "calibrate: no damping value matches the settling time",
        settling_error);
  }

  CalibrationResult result;
  result.material = {stiffness, best_c};
  result.fem_deflection = fem_deflection;
  result.spring_deflection = spring_defl;
  result.deflection_error = deflection_error;
  result.fem_settling = fem_settle;
  result.spring_settling = best_settle;
  result.settling_error = settling_error;
  return result;
}

}  // namespace softgait
