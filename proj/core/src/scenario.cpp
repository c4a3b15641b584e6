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

#include "softgait/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "softgait/error.hpp"
#include "softgait/io.hpp"
#include "softgait/material.hpp"

namespace softgait {

namespace {

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct IniFile {
  // section -> key -> value, insertion order preserved per section.
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      sections;

  bool has(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    if (it == sections.end()) return false;
    for (const auto& [k, v] : it->second) {
      if (k == key) return true;
    }
    return false;
  }

  std::string get(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    if (it != sections.end()) {
      for (const auto& [k, v] : it->second) {
        if (k == key) return v;
      }
    }
    return "";
  }
};

IniFile parse_ini(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open scenario file: " + path.string());
  }
  IniFile ini;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw InputError(path.string() + ":" + std::to_string(line_no) +
                         ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      ini.sections[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": key '" + key + "' outside any section");
    }
    ini.sections[section].emplace_back(key, value);
  }
  return ini;
}

double num(const IniFile& ini, const std::string& section,
           const std::string& key, double fallback) {
  if (!ini.has(section, key)) return fallback;
  return parse_double(ini.get(section, key), section + "." + key);
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_absolute()) return p;
  return base / p;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  const IniFile ini = parse_ini(path);

  static const std::map<std::string, std::vector<std::string>> kKnown = {
      {"world",
       {"model", "dt", "duration", "gravity", "warmup", "seed"}},
      {"material",
       {"mode", "stiffness", "damping", "young_kpa", "poisson",
        "damping_coeff", "density"}},
      {"skeleton",
       {"kp", "kd", "velocity_feedforward", "gravity_compensation",
        "flex_offset_left",
        "flex_offset_right", "flex_anchor_x", "flex_anchor_z",
        "foot_mesh_left", "foot_mesh_right", "pin_margin",
        "pin_sole_exclusion_z", "pelvis_mass", "thigh_mass", "thigh_length",
        "shank_mass", "shank_length", "foot_mass", "hip_half_width"}},
      {"contact",
       {"stiffness", "damping", "friction", "plane_height"}},
      {"reference",
       {"motion", "band", "band_peak1", "band_trough", "band_peak2",
        "band_stance_fraction", "band_sd_fraction",
        "band_sd_floor_fraction"}},
  };
  for (const auto& [section, entries] : ini.sections) {
    auto it = kKnown.find(section);
    if (it == kKnown.end()) {
      throw InputError(path.string() + ": unknown section [" + section + "]");
    }
    for (const auto& [key, value] : entries) {
      if (std::find(it->second.begin(), it->second.end(), key) ==
          it->second.end()) {
        throw InputError(path.string() + ": unknown key '" + section + "." +
                         key + "'");
      }
    }
  }

  Scenario sc;
  sc.source_path = path;
  const std::filesystem::path base = path.parent_path();
  WorldConfig& w = sc.world;

  w.label = ini.has("world", "model") ? ini.get("world", "model") : "custom";
  if (MaterialLibrary::has_preset(w.label)) {
    const MaterialPreset& preset = MaterialLibrary::preset(w.label);
    w.spring = preset.spring;
    w.fem = preset.fem;
  } else if (w.label != "SK" && w.label != "custom") {
    throw InputError(path.string() + ": unknown model label '" + w.label +
                     "' (expected SK, A, B, E or custom)");
  }

  w.dt = num(ini, "world", "dt", 0.0);
  w.duration = num(ini, "world", "duration", w.duration);
  w.gravity = num(ini, "world", "gravity", w.gravity);
  w.warmup = num(ini, "world", "warmup", w.warmup);
  w.random_seed = unsigned(num(ini, "world", "seed", 0.0));

  if (ini.has("material", "mode")) {
    w.mode = material_mode_from_string(ini.get("material", "mode"));
  }
  if (ini.has("material", "stiffness")) {
    w.spring.stiffness = num(ini, "material", "stiffness", 0.0);
  }
  if (ini.has("material", "damping")) {
    w.spring.damping = num(ini, "material", "damping", 0.0);
  }
  if (ini.has("material", "young_kpa")) {
    w.fem.young_modulus = 1e3 * num(ini, "material", "young_kpa", 0.0);
  }
  if (ini.has("material", "poisson")) {
    w.fem.poisson_ratio = num(ini, "material", "poisson", 0.0);
  }
  if (ini.has("material", "damping_coeff")) {
    w.fem.damping_coefficient = num(ini, "material", "damping_coeff", 0.0);
  }
  w.flex_density = num(ini, "material", "density", w.flex_density);

  w.pd_kp = num(ini, "skeleton", "kp", w.pd_kp);
  w.pd_kd = num(ini, "skeleton", "kd", w.pd_kd);
  w.velocity_feedforward =
      num(ini, "skeleton", "velocity_feedforward", 1.0) != 0.0;
  w.gravity_compensation =
      num(ini, "skeleton", "gravity_compensation", 1.0) != 0.0;
  w.placement.offset_left =
      num(ini, "skeleton", "flex_offset_left", w.placement.offset_left);
  w.placement.offset_right =
      num(ini, "skeleton", "flex_offset_right", w.placement.offset_right);
  w.placement.anchor_x =
      num(ini, "skeleton", "flex_anchor_x", w.placement.anchor_x);
  w.placement.anchor_z =
      num(ini, "skeleton", "flex_anchor_z", w.placement.anchor_z);
  w.pin_params.margin = num(ini, "skeleton", "pin_margin",
                            w.pin_params.margin);
  w.pin_params.sole_exclusion_z = num(ini, "skeleton", "pin_sole_exclusion_z",
                                      w.pin_params.sole_exclusion_z);
  w.skeleton.pelvis_mass =
      num(ini, "skeleton", "pelvis_mass", w.skeleton.pelvis_mass);
  w.skeleton.thigh_mass =
      num(ini, "skeleton", "thigh_mass", w.skeleton.thigh_mass);
  w.skeleton.thigh_length =
      num(ini, "skeleton", "thigh_length", w.skeleton.thigh_length);
  w.skeleton.shank_mass =
      num(ini, "skeleton", "shank_mass", w.skeleton.shank_mass);
  w.skeleton.shank_length =
      num(ini, "skeleton", "shank_length", w.skeleton.shank_length);
  w.skeleton.foot_mass =
      num(ini, "skeleton", "foot_mass", w.skeleton.foot_mass);
  w.skeleton.hip_half_width =
      num(ini, "skeleton", "hip_half_width", w.skeleton.hip_half_width);

  if (ini.has("skeleton", "foot_mesh_left")) {
    sc.foot_mesh_left = resolve(base, ini.get("skeleton", "foot_mesh_left"));
  }
  if (ini.has("skeleton", "foot_mesh_right")) {
    sc.foot_mesh_right = resolve(base, ini.get("skeleton", "foot_mesh_right"));
  }

  w.plane.contact_stiffness =
      num(ini, "contact", "stiffness", w.plane.contact_stiffness);
  w.plane.contact_damping =
      num(ini, "contact", "damping", w.plane.contact_damping);
  w.plane.friction_coefficient =
      num(ini, "contact", "friction", w.plane.friction_coefficient);
  w.plane.height = num(ini, "contact", "plane_height", w.plane.height);

  if (ini.has("reference", "motion")) {
    sc.reference_motion = resolve(base, ini.get("reference", "motion"));
  }
  const std::string band = ini.has("reference", "band")
                               ? ini.get("reference", "band")
                               : "synth";
  if (band == "synth") {
    sc.band.synth = true;
  } else {
    sc.band.synth = false;
    sc.band.file = resolve(base, band);
  }
  sc.band.synth_params.peak1 =
      num(ini, "reference", "band_peak1", sc.band.synth_params.peak1);
  sc.band.synth_params.trough =
      num(ini, "reference", "band_trough", sc.band.synth_params.trough);
  sc.band.synth_params.peak2 =
      num(ini, "reference", "band_peak2", sc.band.synth_params.peak2);
  sc.band.synth_params.stance_fraction =
      num(ini, "reference", "band_stance_fraction",
          sc.band.synth_params.stance_fraction);
  sc.band.synth_params.sd_fraction = num(
      ini, "reference", "band_sd_fraction", sc.band.synth_params.sd_fraction);
  sc.band.synth_params.sd_floor_fraction =
      num(ini, "reference", "band_sd_floor_fraction",
          sc.band.synth_params.sd_floor_fraction);

  if (sc.reference_motion.empty()) {
    throw InputError(path.string() +
                     ": missing required key 'reference.motion'");
  }
  if (w.flex_enabled()) {
    if (sc.foot_mesh_left.empty()) {
      throw InputError(path.string() +
                       ": missing required key 'skeleton.foot_mesh_left'");
    }
    if (sc.foot_mesh_right.empty()) {
      throw InputError(path.string() +
                       ": missing required key 'skeleton.foot_mesh_right'");
    }
  }
  sc.world.validate();
  return sc;
}

std::string canonical_scenario_text(const Scenario& sc) {
  const WorldConfig& w = sc.world;
  std::ostringstream out;
  out << "label=" << w.label << "\n"
      << "dt=" << format_double(w.resolved_dt()) << "\n"
      << "duration=" << format_double(w.duration) << "\n"
      << "gravity=" << format_double(w.gravity) << "\n"
      << "mode=" << material_mode_name(w.mode) << "\n"
      << "spring=" << format_double(w.spring.stiffness) << ","
      << format_double(w.spring.damping) << "\n"
      << "fem=" << format_double(w.fem.young_modulus) << ","
      << format_double(w.fem.poisson_ratio) << ","
      << format_double(w.fem.damping_coefficient) << "\n"
      << "density=" << format_double(w.flex_density) << "\n"
      << "placement=" << format_double(w.placement.anchor_x) << ","
      << format_double(w.placement.anchor_z) << ","
      << format_double(w.placement.offset_left) << ","
      << format_double(w.placement.offset_right) << "\n"
      << "plane=" << format_double(w.plane.height) << ","
      << format_double(w.plane.contact_stiffness) << ","
      << format_double(w.plane.contact_damping) << ","
      << format_double(w.plane.friction_coefficient) << "\n"
      << "pd=" << format_double(w.pd_kp) << "," << format_double(w.pd_kd)
      << "," << (w.velocity_feedforward ? 1 : 0) << "\n"
      << "pins=" << format_double(w.pin_params.margin) << ","
      << format_double(w.pin_params.sole_exclusion_z) << "\n"
      << "skeleton=" << format_double(w.skeleton.pelvis_mass) << ","
      << format_double(w.skeleton.thigh_mass) << ","
      << format_double(w.skeleton.thigh_length) << ","
      << format_double(w.skeleton.shank_mass) << ","
      << format_double(w.skeleton.shank_length) << ","
      << format_double(w.skeleton.foot_mass) << ","
      << format_double(w.skeleton.hip_half_width) << "\n"
      << "warmup=" << format_double(w.warmup) << "\n";
  return out.str();
}

uint64_t scenario_hash(const Scenario& sc) {
  uint64_t h = fnv1a64(canonical_scenario_text(sc));
  if (!sc.reference_motion.empty()) {
    h = fnv1a64(h, read_file(sc.reference_motion));
  }
  if (sc.world.flex_enabled()) {
    if (!sc.foot_mesh_left.empty()) {
      h = fnv1a64(h, read_file(sc.foot_mesh_left));
    }
    if (!sc.foot_mesh_right.empty()) {
      h = fnv1a64(h, read_file(sc.foot_mesh_right));
    }
  }
  return h;
}

}  // namespace softgait
