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

#include <filesystem>
#include <string>

#include "softgait/gaitlab.hpp"
#include "softgait/sim.hpp"

namespace softgait {

// Where the analysis reference band comes from.
struct BandConfig {
  bool synth = true;
  std::filesystem::path file;  // used when synth is false
  SynthBandParams synth_params;
};

// A runnable configuration: world parameters plus asset paths and the
// model label (SK disables the flex feet; A/B/E select presets unless
// overridden by explicit material keys).
struct Scenario {
  WorldConfig world;
  std::filesystem::path foot_mesh_left;
  std::filesystem::path foot_mesh_right;
  std::filesystem::path reference_motion;
  BandConfig band;
  std::filesystem::path source_path;
};

// Sectioned key=value text file with [world], [material], [skeleton],
// [contact] and [reference] sections. Unknown keys are errors naming the
// key. Relative asset paths resolve against the scenario file directory.
Scenario load_scenario(const std::filesystem::path& path);

// Stable serialization of every value that affects a run; feeds the
// manifest hash together with the asset file bytes.
std::string canonical_scenario_text(const Scenario& scenario);
uint64_t scenario_hash(const Scenario& scenario);

}  // namespace softgait
