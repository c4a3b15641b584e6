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

#include "softgait/lattice.hpp"
#include "softgait/material.hpp"

namespace softgait {

struct CalibrationResult {
  SpringMaterial material;
  double fem_deflection = 0.0;     // m, continuum static deflection
  double spring_deflection = 0.0;  // m, at the calibrated stiffness
  double deflection_error = 0.0;   // relative
  double fem_settling = 0.0;       // s, step-response settling time
  double spring_settling = 0.0;
  double settling_error = 0.0;     // relative
};

// Finds the spring (stiffness, damping) pair whose behavior matches the
// continuum material on this lattice: bisection on stiffness until the
// static deflection under `test_load` (bottom nodes fixed, load spread
// over the top nodes) matches the continuum solve within 10%, then a
// damping search until the step-response settling times agree within
// 20%. Throws CalibrationError with the best residual when no match
// exists in range.
CalibrationResult calibrate(const FemMaterial& fem,
                            const VolumetricLattice& lattice,
                            double test_load);

}  // namespace softgait
