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

#include "softgait/reference_motion.hpp"

#include <algorithm>

#include "softgait/error.hpp"
#include "softgait/io.hpp"

namespace softgait {

namespace {

const std::vector<std::string>& columns() {
  static const std::vector<std::string> kColumns = {
      "t",     "l_hip",    "l_knee",   "l_ankle",     "r_hip",
      "r_knee", "r_ankle", "pelvis_x", "pelvis_z", "pelvis_pitch"};
  return kColumns;
}

}  // namespace

void ReferenceMotion::validate() const {
  if (t.empty()) {
    throw InputError("reference motion: no samples");
  }
  for (size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) {
      throw InputError("reference motion: timestamps must strictly increase");
    }
  }
  const size_t n = t.size();
  for (int j = 0; j < joint::count; ++j) {
    if (joints[j].size() != n) {
      throw InputError(std::string("reference motion: joint series '") +
                       joint::name(j) + "' length mismatch");
    }
  }
  if (pelvis_x.size() != n || pelvis_z.size() != n ||
      pelvis_pitch.size() != n) {
    throw InputError("reference motion: pelvis series length mismatch");
  }
}

ReferenceSample ReferenceMotion::sample(double time) const {
  ReferenceSample s;
  const size_t n = t.size();
  if (n == 1) {
    for (int j = 0; j < joint::count; ++j) s.angles[j] = joints[j][0];
    s.pelvis = {pelvis_x[0], pelvis_z[0], pelvis_pitch[0], 0, 0, 0};
    return s;
  }

  size_t hi = std::upper_bound(t.begin(), t.end(), time) - t.begin();
  hi = std::clamp<size_t>(hi, 1, n - 1);
  const size_t lo = hi - 1;
  const double dt = t[hi] - t[lo];
  double a = (time - t[lo]) / dt;
  const bool inside = time >= t.front() && time <= t.back();
  a = std::clamp(a, 0.0, 1.0);

  auto lerp = [&](const std::vector<double>& series, double* rate) {
    const double slope = (series[hi] - series[lo]) / dt;
    if (rate) *rate = inside ? slope : 0.0;
    return series[lo] + a * (series[hi] - series[lo]);
  };

  for (int j = 0; j < joint::count; ++j) {
    s.angles[j] = lerp(joints[j], &s.rates[j]);
  }
  s.pelvis.x = lerp(pelvis_x, &s.pelvis.vx);
  s.pelvis.z = lerp(pelvis_z, &s.pelvis.vz);
  s.pelvis.pitch = lerp(pelvis_pitch, &s.pelvis.vpitch);
  return s;
}

ReferenceMotion ReferenceMotion::load(const std::filesystem::path& path) {
  const NumericTable table = read_numeric_csv(path);
  ReferenceMotion motion;
  std::array<int, 10> cols;
  for (size_t c = 0; c < columns().size(); ++c) {
    cols[c] = table.column(columns()[c]);
    if (cols[c] < 0) {
      throw InputError(path.string() + ": missing column '" + columns()[c] +
                       "'");
    }
  }
  motion.t = table.extract(cols[0]);
  for (int j = 0; j < joint::count; ++j) {
    motion.joints[j] = table.extract(cols[1 + j]);
  }
  motion.pelvis_x = table.extract(cols[7]);
  motion.pelvis_z = table.extract(cols[8]);
  motion.pelvis_pitch = table.extract(cols[9]);
  motion.validate();
  return motion;
}

void ReferenceMotion::save(const std::filesystem::path& path) const {
  validate();
  std::vector<std::vector<double>> rows;
  rows.reserve(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    std::vector<double> row = {t[i]};
    for (int j = 0; j < joint::count; ++j) row.push_back(joints[j][i]);
    row.push_back(pelvis_x[i]);
    row.push_back(pelvis_z[i]);
    row.push_back(pelvis_pitch[i]);
    rows.push_back(std::move(row));
  }
  write_numeric_csv(path, columns(), rows);
}

}  // namespace softgait
