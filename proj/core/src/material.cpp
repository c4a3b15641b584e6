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

#include "softgait/material.hpp"

#include "softgait/error.hpp"

namespace softgait {

void validate_material(const SpringMaterial& m) {
  if (!(m.stiffness >= 0.0)) {
    throw InputError("spring material: stiffness must be >= 0");
  }
  if (!(m.damping >= 0.0)) {
    throw InputError("spring material: damping must be >= 0");
  }
}

void validate_material(const FemMaterial& m) {
  if (!(m.young_modulus > 0.0)) {
    throw InputError("fem material: Young's modulus must be > 0");
  }
  if (m.poisson_ratio == 0.5) {
    throw InputError(
        "fem material: Poisson ratio 0.5 is incompressible and has no "
        "finite Lame lambda");
  }
  if (!(m.poisson_ratio >= 0.0) || !(m.poisson_ratio < 0.5)) {
    throw InputError("fem material: Poisson ratio must be in [0, 0.5)");
  }
  if (!(m.damping_coefficient >= 0.0)) {
    throw InputError("fem material: damping coefficient must be >= 0");
  }
}

LameParameters lame_parameters(const FemMaterial& m) {
  validate_material(m);
  const double e = m.young_modulus;
  const double nu = m.poisson_ratio;
  LameParameters lame;
  lame.mu = e / (2.0 * (1.0 + nu));
  lame.lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  return lame;
}

const std::array<MaterialPreset, 3>& MaterialLibrary::presets() {
  static const std::array<MaterialPreset, 3> kPresets = {{
      {"A", {57e3, 0.3, 0.1}, {2000.0, 100.0}},
      {"B", {110e3, 0.3, 0.1}, {5000.0, 100.0}},
      {"E", {500e3, 0.3, 0.1}, {12000.0, 100.0}},
  }};
  return kPresets;
}

const MaterialPreset& MaterialLibrary::preset(std::string_view label) {
  for (const MaterialPreset& p : presets()) {
    if (p.label == label) return p;
  }
  throw InputError("unknown material preset '" + std::string(label) +
                   "' (expected A, B or E)");
}

bool MaterialLibrary::has_preset(std::string_view label) {
  for (const MaterialPreset& p : presets()) {
    if (p.label == label) return true;
  }
  return false;
}

const std::array<TissueRange, 3>& MaterialLibrary::tissue_ranges() {
  static const std::array<TissueRange, 3> kRanges = {{
      {"connective tissue", 1.5e6, 2.25e5, 0.3, 0.3,
       "bounds listed in descending source order"},
      {"muscle", 164.0, 39.0, 0.493, 0.3, ""},
      {"fat", 18.0, 24.0, 0.5, 0.13, ""},
  }};
  return kRanges;
}

}  // namespace softgait
