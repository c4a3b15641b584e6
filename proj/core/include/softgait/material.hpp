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
#include <string_view>

namespace softgait {

// Direct edge-spring material: Hooke stiffness plus a dashpot.
struct SpringMaterial {
  double stiffness = 2000.0;  // N/m
  double damping = 100.0;     // N*s/m
};

// Continuum linear-elastic material with stiffness-proportional damping.
struct FemMaterial {
  double young_modulus = 57e3;      // Pa
  double poisson_ratio = 0.3;
  double damping_coefficient = 0.1;
};

struct LameParameters {
  double mu = 0.0;      // Pa
  double lambda = 0.0;  // Pa
};

void validate_material(const SpringMaterial& m);
void validate_material(const FemMaterial& m);

// mu = E / (2(1+nu)); lambda = E nu / ((1+nu)(1-2nu)).
// Throws InputError for nu = 0.5 (incompressible limit).
LameParameters lame_parameters(const FemMaterial& m);

// Young's modulus range in kPa and Poisson range, stored verbatim in the
// order the source lists them (the connective-tissue range is listed in
// descending order; kept as-is, see `note`).
struct TissueRange {
  std::string name;
  double young_kpa_first, young_kpa_second;
  double poisson_first, poisson_second;
  std::string note;
};

struct MaterialPreset {
  std::string label;
  FemMaterial fem;
  SpringMaterial spring;
};

struct MaterialLibrary {
  static const std::array<MaterialPreset, 3>& presets();
  static const MaterialPreset& preset(std::string_view label);
  static bool has_preset(std::string_view label);
  static const std::array<TissueRange, 3>& tissue_ranges();
};

}  // namespace softgait
