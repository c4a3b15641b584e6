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

#include "softgait/gaitlab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "softgait/error.hpp"
#include "softgait/io.hpp"

namespace softgait {

std::vector<GaitCycle> segment_cycles(std::span<const double> time,
                                      std::span<const double> force,
                                      double body_weight,
                                      double threshold_fraction, Side side) {
  if (time.size() != force.size()) {
    throw InputError("segment_cycles: time and force lengths differ");
  }
  if (time.empty()) {
    throw InputError("segment_cycles: empty trace");
  }
  const double threshold = threshold_fraction * body_weight;
  std::vector<int> strikes;
  for (size_t i = 1; i < force.size(); ++i) {
    if (force[i - 1] < threshold && force[i] >= threshold) {
      strikes.push_back(int(i));
    }
  }
  std::vector<GaitCycle> cycles;
  for (size_t k = 0; k + 1 < strikes.size(); ++k) {
    cycles.push_back({strikes[k], strikes[k + 1], side});
  }
  return cycles;
}

GaitCurve to_gait_percent(std::span<const double> series,
                          const GaitCycle& cycle) {
  if (cycle.start < 0 || cycle.end >= int(series.size()) ||
      cycle.end - cycle.start < 1) {
    throw InputError("to_gait_percent: cycle outside the trace or shorter "
                     "than 2 samples");
  }
  GaitCurve out{};
  const int span = cycle.end - cycle.start;
  for (int g = 0; g < kGaitGridSize; ++g) {
    const double pos = cycle.start + double(g) * span / 100.0;
    const int lo = std::min(int(pos), cycle.end - 1);
    const double frac = pos - lo;
    out[g] = series[lo] + frac * (series[lo + 1] - series[lo]);
  }
  return out;
}

ReferenceBand build_band(std::span<const GaitCurve> curves) {
  if (curves.size() < 2) {
    throw InsufficientDataError(
        "build_band: need at least 2 curves, got " +
        std::to_string(curves.size()));
  }
  ReferenceBand band;
  band.trials = int(curves.size());
  const double n = double(curves.size());
  for (int g = 0; g < kGaitGridSize; ++g) {
    double sum = 0.0;
    for (const GaitCurve& c : curves) sum += c[g];
    band.mean[g] = sum / n;
    double ss = 0.0;
    for (const GaitCurve& c : curves) {
      const double d = c[g] - band.mean[g];
      ss += d * d;
    }
    band.sd[g] = std::sqrt(ss / (n - 1.0));
  }
  return band;
}

double em(const GaitCurve& sim, const ReferenceBand& band) {
  int inside = 0;
  for (int g = 0; g < kGaitGridSize; ++g) {
    if (std::abs(sim[g] - band.mean[g]) <= band.sd[g]) ++inside;
  }
  return double(inside) / double(kGaitGridSize);
}

GaitCurve shift_curve(const GaitCurve& curve, int offset) {
  GaitCurve out{};
  for (int g = 0; g < kGaitGridSize; ++g) {
    int src = (g + offset) % kGaitGridSize;
    if (src < 0) src += kGaitGridSize;
    out[g] = curve[src];
  }
  return out;
}

OffsetResult best_offset(const GaitCurve& sim, const ReferenceBand& band,
                         int search_range) {
  OffsetResult best{0, em(sim, band)};
  for (int o = -search_range; o <= search_range; ++o) {
    if (o == 0) continue;
    const double score = em(shift_curve(sim, o), band);
    if (score > best.em ||
        (score == best.em && std::abs(o) < std::abs(best.offset))) {
      best = {o, score};
    }
  }
  return best;
}

AggregateStats aggregate_em(std::span<const double> per_cycle) {
  if (per_cycle.empty()) {
    throw InsufficientDataError("aggregate_em: no values");
  }
  AggregateStats stats;
  double sum = 0.0;
  for (double v : per_cycle) sum += v;
  stats.mean = sum / double(per_cycle.size());
  if (per_cycle.size() > 1) {
    double ss = 0.0;
    for (double v : per_cycle) {
      const double d = v - stats.mean;
      ss += d * d;
    }
    stats.sd = std::sqrt(ss / double(per_cycle.size() - 1));
  }
  return stats;
}

LfmFit lfm_fit(std::span<const double> sim,
               std::span<const double> reference) {
  if (sim.size() != reference.size() || sim.size() < 2) {
    throw InputError("lfm_fit: need two equal-length series of >= 2 samples");
  }
  const double n = double(sim.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < sim.size(); ++i) {
    mean_x += reference[i];
    mean_y += sim[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < sim.size(); ++i) {
    const double dx = reference[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (sim[i] - mean_y);
  }
  double scale = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    scale = std::max(scale, std::abs(reference[i]));
  }
  if (sxx <= 1e-24 * std::max(1.0, scale * scale) * n) {
    throw InputError("lfm_fit: degenerate regression (constant reference)");
  }

  LfmFit fit;
  fit.a1 = sxy / sxx;
  fit.a0 = mean_y - fit.a1 * mean_x;

  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = 0; i < sim.size(); ++i) {
    const double predicted = fit.a1 * reference[i] + fit.a0;
    ss_res += (sim[i] - predicted) * (sim[i] - predicted);
    ss_tot += (sim[i] - mean_y) * (sim[i] - mean_y);
  }
  if (ss_tot <= 0.0) {
    fit.r2 = ss_res <= 0.0 ? 1.0 : 0.0;
  } else {
    fit.r2 = 1.0 - ss_res / ss_tot;
  }
  return fit;
}

ReferenceBand synth_reference(const SynthBandParams& params,
                              double body_weight) {
  if (!(body_weight > 0.0)) {
    throw InputError("synth_reference: body weight must be positive");
  }
  if (!(params.stance_fraction > 0.0) || !(params.stance_fraction < 1.0)) {
    throw InputError("synth_reference: stance fraction must be in (0, 1)");
  }
  ReferenceBand band;
  band.trials = 6;
  const double stance_pct = params.stance_fraction * 100.0;
  auto ease = [](double from, double to, double u) {
    return from + (to - from) * 0.5 * (1.0 - std::cos(M_PI * u));
  };
  for (int g = 0; g < kGaitGridSize; ++g) {
    const double u = double(g) / stance_pct;
    double value = 0.0;
    if (u <= 1.0) {
      if (u < 0.25) {
        value = ease(0.0, params.peak1, u / 0.25);
      } else if (u < 0.5) {
        value = ease(params.peak1, params.trough, (u - 0.25) / 0.25);
      } else if (u < 0.75) {
        value = ease(params.trough, params.peak2, (u - 0.5) / 0.25);
      } else {
        value = ease(params.peak2, 0.0, (u - 0.75) / 0.25);
      }
    }
    band.mean[g] = value * body_weight;
    band.sd[g] = std::max(params.sd_fraction * band.mean[g],
                          params.sd_floor_fraction * body_weight);
  }
  return band;
}

void write_band_csv(const std::filesystem::path& path,
                    const ReferenceBand& band) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write band file: " + path.string());
  }
  out << "# trials=" << band.trials << "\n";
  out << "gait_pct,mean,sd\n";
  for (int g = 0; g < kGaitGridSize; ++g) {
    out << g << ',' << format_double(band.mean[g]) << ','
        << format_double(band.sd[g]) << '\n';
  }
}

ReferenceBand read_band_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open band file: " + path.string());
  }
  ReferenceBand band;
  std::string line;
  int row = 0;
  bool header_done = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("trials=");
      if (pos != std::string::npos) {
        band.trials = int(parse_double(line.substr(pos + 7),
                                       path.string() + " trials"));
      }
      continue;
    }
    if (!header_done) {
      header_done = true;  // gait_pct,mean,sd
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 3 fields");
    }
    if (row >= kGaitGridSize) {
      throw InputError(path.string() + ": more than 101 band rows");
    }
    band.mean[row] = parse_double(fields[1], path.string());
    band.sd[row] = parse_double(fields[2], path.string());
    if (band.sd[row] < 0.0) {
      throw InputError(path.string() + ": negative sd at row " +
                       std::to_string(row));
    }
    ++row;
  }
  if (row != kGaitGridSize) {
    throw InputError(path.string() + ": expected 101 band rows, got " +
                     std::to_string(row));
  }
  return band;
}

EmReport analyze_grf(const GrfTrace& trace, const ReferenceBand& band,
                     const AnalyzeParams& params) {
  if (!(params.body_weight > 0.0)) {
    throw InputError("analyze: body weight must be positive");
  }
  if (band.trials < params.min_band_trials) {
    throw InsufficientDataError(
        "analyze: band built from " + std::to_string(band.trials) +
        " trial(s); at least " + std::to_string(params.min_band_trials) +
        " required for a meaningful standard deviation");
  }

  const int s = side_index(params.side);
  // Warmup filter.
  size_t first = 0;
  while (first < trace.t.size() && trace.t[first] < params.warmup) ++first;
  std::vector<double> time(trace.t.begin() + first, trace.t.end());
  std::vector<double> force(trace.total_fz[s].begin() + first,
                            trace.total_fz[s].end());
  if (time.empty()) {
    throw InsufficientDataError("analyze: trace ends before the warmup time");
  }

  std::vector<GaitCycle> cycles = segment_cycles(
      time, force, params.body_weight, params.threshold_fraction,
      params.side);
  if (params.max_cycles > 0 && int(cycles.size()) > params.max_cycles) {
    cycles.resize(params.max_cycles);
  }
  if (cycles.empty()) {
    throw InsufficientDataError("analyze: no complete gait cycles in trace");
  }

  std::vector<GaitCurve> curves;
  curves.reserve(cycles.size());
  for (const GaitCycle& c : cycles) {
    curves.push_back(to_gait_percent(force, c));
  }

  EmReport report;
  report.side = params.side;
  report.cycles = int(cycles.size());

  if (!params.apply_offset) {
    for (const GaitCurve& c : curves) report.per_cycle.push_back(em(c, band));
  } else if (params.per_cycle_offset) {
    int worst = 0;
    for (const GaitCurve& c : curves) {
      const OffsetResult r = best_offset(c, band, params.offset_range);
      report.per_cycle.push_back(r.em);
      if (std::abs(r.offset) > std::abs(worst)) worst = r.offset;
    }
    report.offset = worst;
  } else {
    // One offset per model: search on the cycle-average curve, apply the
    // same shift to every cycle.
    GaitCurve average{};
    for (const GaitCurve& c : curves) {
      for (int g = 0; g < kGaitGridSize; ++g) average[g] += c[g];
    }
    for (int g = 0; g < kGaitGridSize; ++g) {
      average[g] /= double(curves.size());
    }
    report.offset = best_offset(average, band, params.offset_range).offset;
    for (const GaitCurve& c : curves) {
      report.per_cycle.push_back(em(shift_curve(c, report.offset), band));
    }
  }

  const AggregateStats stats = aggregate_em(report.per_cycle);
  report.mean = stats.mean;
  report.sd = stats.sd;
  return report;
}

LfmReport lfm_report(std::span<const double> time,
                     const std::array<std::vector<double>, joint::count>& sim,
                     const ReferenceMotion& reference,
                     std::span<const GaitCycle> cycles) {
  if (cycles.empty()) {
    throw InsufficientDataError("lfm: no gait cycles supplied");
  }
  LfmReport report;
  report.cycles = int(cycles.size());
  std::array<std::vector<double>, joint::count> a1, a0, r2;
  for (const GaitCycle& cycle : cycles) {
    for (int j = 0; j < joint::count; ++j) {
      std::vector<double> y, x;
      for (int i = cycle.start; i <= cycle.end; ++i) {
        y.push_back(sim[j][i]);
        x.push_back(reference.sample(time[i]).angles[j]);
      }
      const LfmFit fit = lfm_fit(y, x);
      a1[j].push_back(fit.a1);
      a0[j].push_back(fit.a0);
      r2[j].push_back(fit.r2);
    }
  }
  for (int j = 0; j < joint::count; ++j) {
    report.joints[j].a1 = aggregate_em(a1[j]);
    report.joints[j].a0 = aggregate_em(a0[j]);
    report.joints[j].r2 = aggregate_em(r2[j]);
  }
  return report;
}

}  // namespace softgait
