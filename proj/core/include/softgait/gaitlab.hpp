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
#include <filesystem>
#include <span>
#include <vector>

#include "softgait/reference_motion.hpp"
#include "softgait/sim.hpp"
#include "softgait/types.hpp"

namespace softgait {

// The gait-percentage grid: 0, 1, ..., 100.
inline constexpr int kGaitGridSize = 101;
using GaitCurve = std::array<double, kGaitGridSize>;

// Heel-strike to heel-strike span, as indices into a trace.
struct GaitCycle {
  int start = 0;
  int end = 0;  // index of the next heel strike (inclusive endpoint)
  Side side = Side::left;
};

// Cycles between consecutive upward crossings of
// threshold_fraction * body_weight; incomplete leading/trailing spans
// are discarded.
std::vector<GaitCycle> segment_cycles(std::span<const double> time,
                                      std::span<const double> force,
                                      double body_weight,
                                      double threshold_fraction = 0.05,
                                      Side side = Side::left);

// Linear resampling of one cycle onto the gait-percentage grid. The
// trace is assumed uniformly sampled within the cycle.
GaitCurve to_gait_percent(std::span<const double> series,
                          const GaitCycle& cycle);

// Mean and standard-deviation curves over the gait grid. `trials`
// records how many recordings produced the band.
struct ReferenceBand {
  GaitCurve mean{};
  GaitCurve sd{};
  int trials = 2;
};

// Pointwise mean and sample standard deviation (n-1). Throws
// InsufficientDataError for fewer than two curves.
ReferenceBand build_band(std::span<const GaitCurve> curves);

// Fraction of grid points where |sim - mean| <= sd (closed band).
double em(const GaitCurve& sim, const ReferenceBand& band);

struct OffsetResult {
  int offset = 0;
  double em = 0.0;
};

// Exhaustive circular search over integer gait-percent shifts in
// [-search_range, +search_range], maximizing EM; ties break toward the
// smallest |offset|.
OffsetResult best_offset(const GaitCurve& sim, const ReferenceBand& band,
                         int search_range = 15);

GaitCurve shift_curve(const GaitCurve& curve, int offset);

struct AggregateStats {
  double mean = 0.0;
  double sd = 0.0;  // sample sd (n-1); 0 for a single value
};

AggregateStats aggregate_em(std::span<const double> per_cycle);

struct LfmFit {
  double a1 = 0.0;
  double a0 = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of sim against reference; R^2 is computed on
// the sim values against the fitted line. Throws InputError for a
// constant reference.
LfmFit lfm_fit(std::span<const double> sim, std::span<const double> reference);

// Synthetic double-hump ("M"-shaped) vertical-GRF band: peaks near 25%
// and 75% of stance with a trough between, zero in swing; sd is
// sd_fraction * mean with an absolute floor of sd_floor_fraction * BW.
struct SynthBandParams {
  double peak1 = 1.1;    // fraction of body weight
  double trough = 0.8;
  double peak2 = 1.1;
  double stance_fraction = 0.6;
  double sd_fraction = 0.2;
  double sd_floor_fraction = 0.05;
};

ReferenceBand synth_reference(const SynthBandParams& params,
                              double body_weight);

// Band CSV: optional `# trials=N` comment plus gait_pct,mean,sd rows.
void write_band_csv(const std::filesystem::path& path,
                    const ReferenceBand& band);
ReferenceBand read_band_csv(const std::filesystem::path& path);

// End-to-end GRF analysis: warmup filter, cycle segmentation,
// gait-percent normalization, offset search and EM aggregation.
struct AnalyzeParams {
  Side side = Side::left;
  double body_weight = 0.0;
  double warmup = 1.0;
  double threshold_fraction = 0.05;
  bool apply_offset = true;
  bool per_cycle_offset = false;
  int max_cycles = 0;  // 0 = all complete cycles
  int offset_range = 15;
  int min_band_trials = 2;
};

struct EmReport {
  std::vector<double> per_cycle;
  double mean = 0.0;
  double sd = 0.0;
  int offset = 0;
  Side side = Side::left;
  int cycles = 0;
};

EmReport analyze_grf(const GrfTrace& trace, const ReferenceBand& band,
                     const AnalyzeParams& params);

// Per-joint LFM statistics over cycles.
struct LfmJointStats {
  AggregateStats a1, a0, r2;
};

struct LfmReport {
  std::array<LfmJointStats, joint::count> joints;
  int cycles = 0;
};

LfmReport lfm_report(std::span<const double> time,
                     const std::array<std::vector<double>, joint::count>& sim,
                     const ReferenceMotion& reference,
                     std::span<const GaitCycle> cycles);

}  // namespace softgait
