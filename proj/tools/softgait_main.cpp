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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "softgait/calibrate.hpp"
#include "softgait/error.hpp"
#include "softgait/gaitlab.hpp"
#include "softgait/io.hpp"
#include "softgait/material.hpp"
#include "softgait/mesh.hpp"
#include "softgait/scenario.hpp"
#include "softgait/sim.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace softgait;

constexpr int kSchemaVersion = 1;

struct SimulateOverrides {
  double dt = 0.0;
  std::string preset;
  std::string mode;
};

void apply_overrides(Scenario& scenario, const SimulateOverrides& ov) {
  if (ov.dt > 0.0) scenario.world.dt = ov.dt;
  if (!ov.preset.empty()) {
    scenario.world.label = ov.preset;
    if (MaterialLibrary::has_preset(ov.preset)) {
      const MaterialPreset& p = MaterialLibrary::preset(ov.preset);
      scenario.world.spring = p.spring;
      scenario.world.fem = p.fem;
    } else if (ov.preset != "SK") {
      throw InputError("unknown preset '" + ov.preset +
                       "' (expected SK, A, B or E)");
    }
  }
  if (!ov.mode.empty()) {
    scenario.world.mode = material_mode_from_string(ov.mode);
  }
  scenario.world.validate();
}

struct RunArtifacts {
  SimOutput output;
  double timing_s = 0.0;
};

RunArtifacts run_scenario(const Scenario& scenario) {
  std::optional<SurfaceMesh> left, right;
  if (scenario.world.flex_enabled()) {
    left = load_mesh(scenario.foot_mesh_left);
    right = load_mesh(scenario.foot_mesh_right);
  }
  const ReferenceMotion reference =
      ReferenceMotion::load(scenario.reference_motion);

  const auto t0 = std::chrono::steady_clock::now();
  RunArtifacts artifacts;
  artifacts.output =
      run_simulation(scenario.world, left ? &*left : nullptr,
                     right ? &*right : nullptr, reference);
  artifacts.timing_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return artifacts;
}

ReferenceBand band_for(const Scenario& scenario, double body_weight) {
  if (scenario.band.synth) {
    return synth_reference(scenario.band.synth_params, body_weight);
  }
  return read_band_csv(scenario.band.file);
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 const SimulateOverrides& overrides) {
  Scenario scenario = load_scenario(scenario_path);
  apply_overrides(scenario, overrides);

  std::filesystem::create_directories(out_dir);
  const RunArtifacts artifacts = run_scenario(scenario);
  const SimOutput& out = artifacts.output;

  const std::filesystem::path dir(out_dir);
  const auto grf_path = dir / "grf.csv";
  const auto joints_path = dir / "joints.csv";
  const auto events_path = dir / "events.csv";
  write_grf_csv(grf_path, out);
  write_joints_csv(joints_path, out);
  write_events_csv(events_path, out);

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["label"] = scenario.world.label;
  manifest["scenario_hash"] = hex64(scenario_hash(scenario));
  manifest["body_weight"] = out.body_weight;
  manifest["outputs"] = {{"grf", grf_path.string()},
                         {"joints", joints_path.string()},
                         {"events", events_path.string()}};
  manifest["output_hashes"] = {{"grf", hex64(hash_file(grf_path))},
                               {"joints", hex64(hash_file(joints_path))},
                               {"events", hex64(hash_file(events_path))}};
  manifest["timing_s"] = artifacts.timing_s;
  manifest["stable"] = out.stable;
  if (!out.stable) {
    manifest["failure_time"] = out.failure_time;
    manifest["failure_step"] = out.failure_step;
    manifest["failure_reason"] = out.failure_reason;
  }
  std::ofstream mf(dir / "manifest.json");
  mf << manifest.dump(2) << '\n';

  std::cout << "label " << scenario.world.label << ": "
            << (out.stable ? "stable" : "UNSTABLE") << ", "
            << out.time.size() << " steps, "
            << out.events.size() << " skeleton contact events, wrote "
            << (dir / "manifest.json").string() << "\n";
  return out.stable ? 0 : 2;
}

int cmd_sweep(const std::string& scenario_path,
              const std::vector<double>& stiffness_list,
              const std::string& out_dir) {
  if (stiffness_list.size() < 2) {
    throw InputError("sweep: need at least 2 stiffness values");
  }
  const Scenario base = load_scenario(scenario_path);

  struct Row {
    double stiffness = 0.0;
    double em_mean = 0.0;
    double em_sd = 0.0;
    int offset = 0;
    int events = 0;
    bool stable = false;
    bool ok = false;
    std::string error;
  };

  std::vector<double> sorted = stiffness_list;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Row> rows(sorted.size());

  int threads = int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SOFTGAIT_THREADS")) {
    threads = std::max(1, atoi(env));
  }
  threads = std::min<int>(threads, int(sorted.size()));

  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = cursor.fetch_add(1);
      if (i >= sorted.size()) return;
      Row& row = rows[i];
      row.stiffness = sorted[i];
      try {
        Scenario variant = base;
        variant.world.mode = MaterialMode::spring;
        variant.world.label = "custom";
        variant.world.spring.stiffness = sorted[i];
        variant.world.validate();

        const RunArtifacts artifacts = run_scenario(variant);
        row.stable = artifacts.output.stable;
        row.events = int(artifacts.output.events.size());
        if (row.stable) {
          AnalyzeParams params;
          params.body_weight = artifacts.output.body_weight;
          params.warmup = variant.world.warmup;
          const EmReport report =
              analyze_grf(grf_trace(artifacts.output),
                          band_for(variant, params.body_weight), params);
          row.em_mean = report.mean;
          row.em_sd = report.sd;
          row.offset = report.offset;
        }
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::cout << "stiffness  em_mean  skeleton_events  stable\n";
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["rows"] = json::array();
  for (const Row& row : rows) {
    if (row.ok) {
      std::cout << format_double(row.stiffness) << "  "
                << format_fixed(row.em_mean, 3) << "  " << row.events << "  "
                << (row.stable ? "yes" : "no") << "\n";
    } else {
      std::cout << format_double(row.stiffness) << "  failed: " << row.error
                << "\n";
    }
    json r;
    r["stiffness"] = row.stiffness;
    r["ok"] = row.ok;
    if (row.ok) {
      r["em_mean"] = row.em_mean;
      r["em_sd"] = row.em_sd;
      r["offset"] = row.offset;
      r["skeleton_contact_events"] = row.events;
      r["stable"] = row.stable;
    } else {
      r["error"] = row.error;
    }
    doc["rows"].push_back(r);
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / "sweep.json");
    f << doc.dump(2) << '\n';
  }
  return 0;
}

struct AnalyzeFlags {
  std::string grf_path;
  std::string band_path;
  bool synth_band = false;
  SynthBandParams synth;
  double body_weight = 0.0;
  std::string side = "left";
  bool no_offset = false;
  bool per_cycle_offset = false;
  double warmup = 1.0;
  int cycles = 0;
  std::string out_path;
};

int cmd_analyze(const AnalyzeFlags& flags) {
  if (flags.band_path.empty() && !flags.synth_band) {
    throw InputError("analyze: pass --band <csv> or --synth-band");
  }
  if (!(flags.body_weight > 0.0)) {
    throw InputError("analyze: --body-weight must be positive");
  }
  const GrfTrace trace = read_grf_csv(flags.grf_path);
  const ReferenceBand band =
      flags.synth_band ? synth_reference(flags.synth, flags.body_weight)
                       : read_band_csv(flags.band_path);

  AnalyzeParams params;
  params.side = flags.side == "right" ? Side::right : Side::left;
  params.body_weight = flags.body_weight;
  params.warmup = flags.warmup;
  params.apply_offset = !flags.no_offset;
  params.per_cycle_offset = flags.per_cycle_offset;
  params.max_cycles = flags.cycles;

  const EmReport report = analyze_grf(trace, band, params);

  for (size_t i = 0; i < report.per_cycle.size(); ++i) {
    std::cout << "cycle " << i + 1 << ": EM "
              << format_fixed(report.per_cycle[i], 2) << "\n";
  }
  std::cout << "EM " << format_pm(report.mean, report.sd, 3) << " over "
            << report.cycles << " cycles (offset " << report.offset
            << " gait%)\n";

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["side"] = side_name(report.side);
  doc["cycles"] = report.cycles;
  doc["offset"] = report.offset;
  doc["per_cycle"] = report.per_cycle;
  doc["mean"] = report.mean;
  doc["sd"] = report.sd;
  doc["mean_rendered"] = format_fixed(report.mean, 3);
  if (!flags.out_path.empty()) {
    std::ofstream f(flags.out_path);
    f << doc.dump(2) << '\n';
  }
  return 0;
}

struct LfmFlags {
  std::string joints_path;
  std::string reference_path;
  std::string grf_path;
  double period = 0.0;
  double warmup = 1.0;
  int cycles = 0;
  std::string side = "left";
  double body_weight = 0.0;
  std::string out_path;
};

int cmd_lfm(const LfmFlags& flags) {
  const JointTraceData joints = read_joints_csv(flags.joints_path);
  const ReferenceMotion reference =
      ReferenceMotion::load(flags.reference_path);

  std::vector<GaitCycle> cycles;
  const Side side = flags.side == "right" ? Side::right : Side::left;
  if (!flags.grf_path.empty()) {
    if (!(flags.body_weight > 0.0)) {
      throw InputError("lfm: --grf segmentation needs --body-weight");
    }
    const GrfTrace grf = read_grf_csv(flags.grf_path);
    if (grf.t.size() != joints.t.size()) {
      throw InputError("lfm: grf and joint traces have different lengths");
    }
    size_t first = 0;
    while (first < grf.t.size() && grf.t[first] < flags.warmup) ++first;
    std::vector<double> time(grf.t.begin() + first, grf.t.end());
    std::vector<double> force(grf.total_fz[side_index(side)].begin() + first,
                              grf.total_fz[side_index(side)].end());
    cycles = segment_cycles(time, force, flags.body_weight, 0.05, side);
    for (GaitCycle& c : cycles) {
      c.start += int(first);
      c.end += int(first);
    }
  } else if (flags.period > 0.0) {
    size_t i = 0;
    while (i < joints.t.size() && joints.t[i] < flags.warmup) ++i;
    double boundary = flags.warmup + flags.period;
    int start = int(i);
    for (; i < joints.t.size(); ++i) {
      if (joints.t[i] >= boundary) {
        cycles.push_back({start, int(i), side});
        start = int(i);
        boundary += flags.period;
      }
    }
  } else {
    throw InputError("lfm: pass --grf <csv> or --period <s> to segment "
                     "cycles");
  }
  if (flags.cycles > 0 && int(cycles.size()) > flags.cycles) {
    cycles.resize(flags.cycles);
  }
  if (cycles.empty()) {
    throw InsufficientDataError("lfm: no complete gait cycles");
  }

  const LfmReport report =
      lfm_report(joints.t, joints.joints, reference, cycles);

  std::cout << "          ";
  for (int j = 0; j < joint::count; ++j) {
    std::cout << joint::name(j) << "  ";
  }
  std::cout << "\n";
  auto print_row = [&](const char* label, auto pick) {
    std::cout << label << "  ";
    for (int j = 0; j < joint::count; ++j) {
      const AggregateStats& s = pick(report.joints[j]);
      std::cout << format_pm(s.mean, s.sd, 3) << "  ";
    }
    std::cout << "\n";
  };
  print_row("R^2", [](const LfmJointStats& s) { return s.r2; });
  print_row("a1 ", [](const LfmJointStats& s) { return s.a1; });
  print_row("a0 ", [](const LfmJointStats& s) { return s.a0; });
  std::cout << "(" << report.cycles << " cycles)\n";

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["cycles"] = report.cycles;
  for (int j = 0; j < joint::count; ++j) {
    const LfmJointStats& s = report.joints[j];
    doc["joints"][joint::name(j)] = {
        {"r2", {{"mean", s.r2.mean}, {"sd", s.r2.sd}}},
        {"a1", {{"mean", s.a1.mean}, {"sd", s.a1.sd}}},
        {"a0", {{"mean", s.a0.mean}, {"sd", s.a0.sd}}}};
  }
  if (!flags.out_path.empty()) {
    std::ofstream f(flags.out_path);
    f << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_calibrate(double young_kpa, double poisson, double damping_coeff,
                  const std::string& mesh_path, double load, double density,
                  const std::string& out_path) {
  const FemMaterial fem{young_kpa * 1e3, poisson, damping_coeff};
  validate_material(fem);
  const SurfaceMesh mesh = load_mesh(mesh_path);
  const VolumetricLattice lattice = build_lattice(mesh, density);
  const CalibrationResult result = calibrate(fem, lattice, load);

  std::cout << "stiffness " << format_double(result.material.stiffness)
            << " N/m\n"
            << "damping " << format_double(result.material.damping)
            << " N*s/m\n"
            << "deflection: fem " << format_double(result.fem_deflection)
            << " m, spring " << format_double(result.spring_deflection)
            << " m (residual " << format_fixed(100.0 * result.deflection_error, 2)
            << "%)\n"
            << "settling: fem " << format_double(result.fem_settling)
            << " s, spring " << format_double(result.spring_settling)
            << " s (residual " << format_fixed(100.0 * result.settling_error, 2)
            << "%)\n";

  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["stiffness"] = result.material.stiffness;
  doc["damping"] = result.material.damping;
  doc["deflection"] = {{"fem", result.fem_deflection},
                       {"spring", result.spring_deflection},
                       {"relative_error", result.deflection_error}};
  doc["settling"] = {{"fem", result.fem_settling},
                     {"spring", result.spring_settling},
                     {"relative_error", result.settling_error}};
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_decimate(const std::string& in_path, int target,
                 const std::string& out_path,
                 const std::string& lattice_dump) {
  const SurfaceMesh input = load_mesh(in_path);
  const SurfaceMesh output = decimate(input, target);
  save_mesh(output, out_path);

  const double distance = hausdorff_distance(input, output);
  const double diag = input.bbox_diagonal();
  std::cout << "vertices: " << input.vertices.size() << " -> "
            << output.vertices.size() << "\n"
            << "faces: " << input.faces.size() << " -> "
            << output.faces.size() << "\n"
            << "hausdorff " << format_double(distance) << " m ("
            << format_fixed(100.0 * distance / diag, 2)
            << "% of bbox diagonal)\n";
  if (!lattice_dump.empty()) {
    const VolumetricLattice lattice = build_lattice(output, 1060.0);
    std::ofstream f(lattice_dump);
    f << lattice_debug_dump(lattice);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softgait: soft-body foot walking simulation and gait "
               "analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a scenario");
  std::string scenario_path, out_dir = "out";
  SimulateOverrides overrides;
  simulate->add_option("--scenario", scenario_path, "scenario file")
      ->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--dt", overrides.dt, "timestep override (s)");
  simulate->add_option("--preset", overrides.preset,
                       "material preset override (SK, A, B, E)");
  simulate->add_option("--mode", overrides.mode,
                       "material mode override (spring, fem)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "stiffness sweep + EM table");
  std::string sweep_scenario, sweep_out;
  std::vector<double> stiffness_list;
  sweep->add_option("--scenario", sweep_scenario, "base scenario")
      ->required();
  sweep->add_option("--stiffness", stiffness_list,
                    "comma-separated stiffness values (N/m)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "output directory");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "EM metric from a GRF trace");
  AnalyzeFlags aflags;
  analyze->add_option("--grf", aflags.grf_path, "grf.csv from simulate")
      ->required();
  analyze->add_option("--band", aflags.band_path, "reference band csv");
  analyze->add_flag("--synth-band", aflags.synth_band,
                    "use the synthetic M-shaped band");
  analyze->add_option("--body-weight", aflags.body_weight,
                      "body weight (N)");
  analyze->add_option("--side", aflags.side, "left or right")
      ->check(CLI::IsMember({"left", "right"}));
  analyze->add_flag("--no-offset", aflags.no_offset,
                    "disable the phase-offset search");
  analyze->add_flag("--per-cycle-offset", aflags.per_cycle_offset,
                    "search the offset per cycle instead of per model");
  analyze->add_option("--warmup", aflags.warmup, "seconds to discard");
  analyze->add_option("--cycles", aflags.cycles, "max cycles to analyze");
  analyze->add_option("--out", aflags.out_path, "report json path");
  analyze->add_option("--band-peak1", aflags.synth.peak1, "synth peak 1 (BW)");
  analyze->add_option("--band-trough", aflags.synth.trough,
                      "synth trough (BW)");
  analyze->add_option("--band-peak2", aflags.synth.peak2, "synth peak 2 (BW)");
  analyze->add_option("--band-stance", aflags.synth.stance_fraction,
                      "synth stance fraction");
  analyze->add_option("--band-sd", aflags.synth.sd_fraction,
                      "synth sd fraction");
  analyze->add_option("--band-sd-floor", aflags.synth.sd_floor_fraction,
                      "synth sd floor fraction");

  // lfm
  auto* lfm = app.add_subcommand("lfm", "linear fit of joints vs reference");
  LfmFlags lflags;
  lfm->add_option("--joints", lflags.joints_path, "joints.csv")->required();
  lfm->add_option("--reference", lflags.reference_path,
                  "reference motion csv")
      ->required();
  lfm->add_option("--grf", lflags.grf_path,
                  "grf.csv for heel-strike segmentation");
  lfm->add_option("--period", lflags.period,
                  "fixed cycle period (s), alternative to --grf");
  lfm->add_option("--warmup", lflags.warmup, "seconds to discard");
  lfm->add_option("--cycles", lflags.cycles, "max cycles");
  lfm->add_option("--side", lflags.side, "left or right")
      ->check(CLI::IsMember({"left", "right"}));
  lfm->add_option("--body-weight", lflags.body_weight,
                  "body weight for --grf segmentation (N)");
  lfm->add_option("--out", lflags.out_path, "report json path");

  // calibrate
  auto* calibrate_cmd =
      app.add_subcommand("calibrate", "spring equivalent of a continuum "
                                      "material on a mesh lattice");
  double young_kpa = 57.0, poisson = 0.3, damping_coeff = 0.1;
  double load = 100.0, density = 1060.0;
  std::string mesh_path, calib_out;
  calibrate_cmd->add_option("--young-kpa", young_kpa, "Young's modulus (kPa)")
      ->required();
  calibrate_cmd->add_option("--poisson", poisson, "Poisson ratio")
      ->required();
  calibrate_cmd->add_option("--damping-coeff", damping_coeff,
                            "continuum damping coefficient");
  calibrate_cmd->add_option("--mesh", mesh_path, "foot mesh path")
      ->required();
  calibrate_cmd->add_option("--load", load, "test load (N)");
  calibrate_cmd->add_option("--density", density, "tissue density (kg/m^3)");
  calibrate_cmd->add_option("--out", calib_out, "report json path");

  // decimate
  auto* decimate_cmd = app.add_subcommand("decimate", "mesh simplification");
  std::string dec_in, dec_out, dec_dump;
  int dec_target = 15;
  decimate_cmd->add_option("--in", dec_in, "input mesh")->required();
  decimate_cmd->add_option("--target", dec_target, "target vertex count")
      ->required();
  decimate_cmd->add_option("--out", dec_out, "output mesh")->required();
  decimate_cmd->add_option("--lattice-dump", dec_dump,
                           "write the lattice debug dump of the result");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(scenario_path, out_dir, overrides);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_scenario, stiffness_list, sweep_out);
    }
    if (analyze->parsed()) {
      return cmd_analyze(aflags);
    }
    if (lfm->parsed()) {
      return cmd_lfm(lflags);
    }
    if (calibrate_cmd->parsed()) {
      return cmd_calibrate(young_kpa, poisson, damping_coeff, mesh_path, load,
                           density, calib_out);
    }
    if (decimate_cmd->parsed()) {
      return cmd_decimate(dec_in, dec_target, dec_out, dec_dump);
    }
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CalibrationError& e) {
    std::cerr << "error: " << e.what()
              << " (best residual " << format_double(e.best_residual())
              << ")\n";
    return 2;
  } catch (const PhysicsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
