// Copyright 2026 The jcmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jcmsim/app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "jcmsim/app/csv.hpp"
#include "jcmsim/perturbation.hpp"

namespace jcmsim::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) { return format_number(x); }
std::string fmt(std::int64_t x) { return std::to_string(x); }

}  // namespace

EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions o;
  o.threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  o.bitrepro = cfg.bitrepro;
  return o;
}

EnsembleStats cmd_run(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  cfg.validate();
  const auto start = Clock::now();
  const auto initial = make_initial_state(cfg.initial, cfg.jcm.truncation);
  auto stats = run_ensemble(initial, cfg.jcm, cfg.noise, cfg.record_stride, engine_options(cfg));
  const double wall = seconds_since(start);

  write_preamble(csv, "run", cfg, {}, kEnsembleColumns);
  for (const auto& pt : stats.points) {
    write_row(csv, {fmt(pt.step), fmt(pt.t_over_T), fmt(pt.fidelity), fmt(pt.stderr_fidelity), fmt(pt.bloch.x),
                    fmt(pt.bloch.y), fmt(pt.bloch.z), fmt(pt.norm_sq), fmt(pt.one_minus_fidelity)});
  }

  const auto& f = stats.final_point();
  const auto clean = noiseless_bloch(initial, cfg.jcm, cfg.jcm.steps).back();
  log << "samples       " << stats.samples << '\n'
      << "F(T)          " << fmt(f.fidelity) << " +- " << fmt(f.stderr_fidelity) << '\n'
      << "S(T)          (" << fmt(f.bloch.x) << ", " << fmt(f.bloch.y) << ", " << fmt(f.bloch.z) << ")\n"
      << "S(T) no noise (" << fmt(clean.x) << ", " << fmt(clean.y) << ", " << fmt(clean.z) << ")\n"
      << "norm deficit  " << fmt(1.0 - f.norm_sq) << '\n'
      << "wall time     " << fmt(wall) << " s\n";
  return stats;
}

FitResult cmd_fit(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  cfg.validate();
  if (cfg.input.empty()) throw ConfigError("fit needs 'input' (an ensemble CSV)");
  const auto table = read_csv_file(cfg.input);
  const int c_t = table.require("t_over_T");
  const int c_f = table.require("F");
  const int c_se = table.column("stderr_F");
  const int c_d = table.column("one_minus_F");
  std::vector<SeriesPoint> series;
  series.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    SeriesPoint pt;
    pt.t_over_T = table.number(r, c_t);
    pt.fidelity = table.number(r, c_f);
    if (c_se >= 0) pt.stderr_fidelity = table.number(r, c_se);
    if (c_d >= 0) pt.one_minus_fidelity = table.number(r, c_d);
    series.push_back(pt);
  }
  FitOptions options;
  options.weighted = cfg.weighted;
  const auto fit = loglog_fit(series, {cfg.window_lo, cfg.window_hi}, options);

  write_preamble(csv, "fit", cfg, {},
                 {"label", "window_lo", "window_hi", "a", "b", "stderr_a", "stderr_b", "rms", "n_points",
                  "n_excluded"});
  write_row(csv, {cfg.label, fmt(fit.window.lo), fmt(fit.window.hi), fmt(fit.a), fmt(fit.b), fmt(fit.stderr_a),
                  fmt(fit.stderr_b), fmt(fit.rms), std::to_string(fit.n_points), std::to_string(fit.n_excluded)});
  log << cfg.label << ": a = " << fmt(fit.a) << " +- " << fmt(fit.stderr_a) << ", b = " << fmt(fit.b) << " +- "
      << fmt(fit.stderr_b) << " (" << fit.n_points << " points, " << fit.n_excluded << " excluded)\n";
  return fit;
}

void cmd_noise_stats(const RunConfig& cfg, std::ostream& csv, std::ostream& histogram, std::ostream& log) {
  cfg.validate();
  std::vector<std::int64_t> marks = cfg.checkpoints;
  marks.push_back(cfg.histogram_step);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const auto levels = sample_levels(marks, cfg.noise, 0, cfg.noise.samples);
  auto values_at = [&](std::int64_t n) {
    const auto col = static_cast<std::size_t>(std::find(marks.begin(), marks.end(), n) - marks.begin());
    std::vector<double> v(levels.size());
    for (std::size_t m = 0; m < levels.size(); ++m) v[m] = static_cast<double>(levels[m][col]) * cfg.noise.delta_e;
    return v;
  };

  write_preamble(csv, "noise-stats", cfg, {},
                 {"n", "sigma2_emp", "sigma2_theory", "m4_emp", "m4_theory", "stderr2", "stderr4"});
  for (auto n : cfg.checkpoints) {
    const auto v = values_at(n);
    const auto s = moment_stats(v);
    write_row(csv, {fmt(n), fmt(s.second), fmt(variance_theory(n, cfg.noise)), fmt(s.fourth),
                    fmt(fourth_moment_theory(n, cfg.noise)), fmt(s.stderr_second), fmt(s.stderr_fourth)});
    log << "n = " << n << ": <E^2>/theory = " << fmt(s.second / variance_theory(n, cfg.noise))
        << ", <E^4>/theory = " << fmt(s.fourth / fourth_moment_theory(n, cfg.noise)) << '\n';
  }

  const auto v = values_at(cfg.histogram_step);
  const auto hist = normality_histogram(v, cfg.histogram_step, cfg.noise);
  std::vector<std::string> notes;
  if (hist.degenerate) notes.emplace_back("degenerate histogram, the field never leaves zero");
  write_preamble(histogram, "noise-stats-histogram", cfg, notes, {"bin_center", "count", "expected"});
  for (const auto& bin : hist.bins) {
    write_row(histogram, {fmt(bin.center), fmt(bin.count), fmt(bin.expected)});
  }
  if (hist.degenerate) {
    log << "histogram at n = " << cfg.histogram_step << " is degenerate (p = 0 or dE = 0)\n";
  } else {
    log << "histogram at n = " << cfg.histogram_step << ": reduced chi2 = " << fmt(hist.reduced_chi2()) << " over "
        << hist.dof << " dof\n";
  }
}

std::vector<SweepPoint> cmd_sweep(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  cfg.validate();
  if (cfg.p_list.empty() || cfg.delta_e_list.empty()) throw ConfigError("sweep needs non-empty p_list and delta_e_list");
  const auto start = Clock::now();
  const auto initial = make_initial_state(cfg.initial, cfg.jcm.truncation);
  auto grid = sweep_fidelity_surface(initial, cfg.p_list, cfg.delta_e_list, cfg.jcm, cfg.noise, engine_options(cfg));
  write_preamble(csv, "sweep", cfg, {}, {"p", "deltaE", "F_at_T", "stderr"});
  for (const auto& v : grid) write_row(csv, {fmt(v.p), fmt(v.delta_e), fmt(v.fidelity), fmt(v.stderr_fidelity)});
  log << grid.size() << " vertices in " << fmt(seconds_since(start)) << " s\n";
  return grid;
}

EnsembleStats cmd_perturb_compare(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  cfg.validate();
  if (cfg.initial == InitialPreset::equal_superposition_g012) {
    throw ConfigError("perturb-compare covers the 0plus and g1 presets only; g012 has no second-order prediction");
  }
  const auto initial = make_initial_state(cfg.initial, cfg.jcm.truncation);
  auto stats = run_ensemble(initial, cfg.jcm, cfg.noise, cfg.record_stride, engine_options(cfg));
  const auto pred = perturbative_prediction(cfg.jcm, cfg.noise);

  std::vector<std::string> notes;
  if (pred.coefficient == 0.0) notes.emplace_back("degenerate, zero noise: both deficits vanish and ratio is nan");
  write_preamble(csv, "perturb-compare", cfg, notes,
                 {"t_over_T", "one_minus_F_mc", "one_minus_F_pred", "ratio", "in_window"});
  int inside = 0;
  for (const auto& pt : stats.points) {
    if (pt.step == 0) continue;
    const double predicted = pred.one_minus_fidelity(pt.t_over_T);
    const double ratio = predicted > 0.0 ? pt.one_minus_fidelity / predicted : std::nan("");
    const bool in = pred.in_window(pt.t_over_T);
    inside += in;
    write_row(csv, {fmt(pt.t_over_T), fmt(pt.one_minus_fidelity), fmt(predicted), fmt(ratio), in ? "1" : "0"});
  }
  log << inside << " recorded points inside the validity window (" << fmt(pred.t_min / pred.gate_time) << ", "
      << fmt(pred.t_max / pred.gate_time) << ") of T\n";
  return stats;
}

std::vector<ConvergenceRow> cmd_convergence(const RunConfig& cfg, std::ostream& csv, std::ostream& log) {
  cfg.validate();
  if (cfg.sample_counts.empty()) throw ConfigError("convergence needs sample_counts");
  const auto initial = make_initial_state(cfg.initial, cfg.jcm.truncation);
  auto rows = convergence_study(initial, cfg.jcm, cfg.noise, cfg.sample_counts, engine_options(cfg));
  write_preamble(csv, "convergence", cfg, {},
                 {"M", "first_stream", "F_T", "stderr_F", "one_minus_F_T", "Sz_T", "norm_sq_T"});
  for (const auto& r : rows) {
    const auto& f = r.final_point;
    write_row(csv, {fmt(r.samples), std::to_string(r.first_stream), fmt(f.fidelity), fmt(f.stderr_fidelity),
                    fmt(f.one_minus_fidelity), fmt(f.bloch.z), fmt(f.norm_sq)});
    log << "M = " << r.samples << ": F(T) = " << fmt(f.fidelity) << " +- " << fmt(f.stderr_fidelity) << '\n';
  }
  return rows;
}

}  // namespace jcmsim::app
