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

#include "jcmsim/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jcmsim {

void NoiseParams::validate() const {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("jump probability p must lie in [0, 1/2], got " + std::to_string(p));
  }
  if (!(delta_e >= 0.0) || !std::isfinite(delta_e)) {
    throw std::invalid_argument("field step dE must be finite and non-negative");
  }
  if (samples < 1) {
    throw std::invalid_argument("sample count M must be at least 1");
  }
}

StreamRng::StreamRng(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double next_field(double field, double r, const NoiseParams& params) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::invalid_argument("uniform draw r must lie in [0, 1)");
  }
  return field + step_direction(r, params.p) * params.delta_e;
}

FieldPath generate_path(std::int64_t steps, const NoiseParams& params, std::uint64_t stream_id) {
  if (steps < 0) {
    throw std::invalid_argument("path length must be non-negative");
  }
  FieldPath path;
  path.delta_e = params.delta_e;
  path.levels.resize(static_cast<std::size_t>(steps) + 1);
  StreamRng rng(params.master_seed, stream_id);
  std::int32_t level = 0;
  path.levels[0] = 0;
  for (std::int64_t n = 1; n <= steps; ++n) {
    level += step_direction(rng.uniform(), params.p);
    path.levels[static_cast<std::size_t>(n)] = level;
  }
  return path;
}

std::vector<std::vector<std::int32_t>> sample_levels(std::span<const std::int64_t> checkpoints,
                                                     const NoiseParams& params, std::uint64_t first_stream,
                                                     std::int64_t count) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      (!checkpoints.empty() && checkpoints.front() < 0)) {
    throw std::invalid_argument("checkpoints must be non-negative and ascending");
  }
  std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(count),
                                             std::vector<std::int32_t>(checkpoints.size()));
  for (std::int64_t m = 0; m < count; ++m) {
    StreamRng rng(params.master_seed, first_stream + static_cast<std::uint64_t>(m));
    std::int32_t level = 0;
    std::int64_t n = 0;
    auto& row = out[static_cast<std::size_t>(m)];
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      for (; n < checkpoints[c]; ++n) {
        level += step_direction(rng.uniform(), params.p);
      }
      row[c] = level;
    }
  }
  return out;
}

MomentStats moment_stats(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("moment statistics of an empty sample");
  }
  MeanAccumulator m1, m2, m3, m4;
  for (const double x : values) {
    const double x2 = x * x;
    m1.add(x);
    m2.add(x2);
    m3.add(x2 * x);
    m4.add(x2 * x2);
  }
  MomentStats s;
  s.count = static_cast<std::int64_t>(values.size());
  s.mean = m1.mean();
  s.second = m2.mean();
  s.third = m3.mean();
  s.fourth = m4.mean();
  s.stderr_mean = m1.standard_error();
  s.stderr_second = m2.standard_error();
  s.stderr_third = m3.standard_error();
  s.stderr_fourth = m4.standard_error();
  return s;
}

namespace {

std::vector<double> values_at(std::span<const FieldPath> paths, std::size_t n) {
  if (paths.empty()) {
    throw std::invalid_argument("no field paths supplied");
  }
  std::vector<double> values;
  values.reserve(paths.size());
  for (const auto& path : paths) {
    if (path.levels.size() < n + 1) {
      throw std::invalid_argument("field path shorter than requested step " + std::to_string(n));
    }
    values.push_back(path.value(n));
  }
  return values;
}

}  // namespace

MomentStats path_moment_stats(std::span<const FieldPath> paths, std::size_t n) {
  const auto values = values_at(paths, n);
  return moment_stats(values);
}

double variance_theory(std::int64_t n, const NoiseParams& params) {
  return 2.0 * params.delta_e * params.delta_e * params.p * static_cast<double>(n);
}

double fourth_moment_theory(std::int64_t n, const NoiseParams& params) {
  const double de2 = params.delta_e * params.delta_e;
  const double pn = params.p * static_cast<double>(n);
  return 12.0 * de2 * de2 * pn * pn;
}

NormalityHistogram normality_histogram(std::span<const double> values, std::int64_t n, const NoiseParams& params,
                                       double min_expected) {
  NormalityHistogram h;
  if (values.empty()) {
    return h;
  }
  const double width = params.delta_e;
  const double sigma2 = variance_theory(n, params);
  h.degenerate = !(width > 0.0) || !(sigma2 > 0.0);

  std::map<std::int64_t, std::int64_t> counts;
  for (const double x : values) {
    const auto bin = h.degenerate ? 0 : static_cast<std::int64_t>(std::llround(x / width));
    ++counts[bin];
  }
  const double total = static_cast<double>(values.size());
  if (h.degenerate) {
    for (const auto& [bin, count] : counts) {
      h.bins.push_back({0.0, count, bin == 0 ? total : 0.0});
    }
    return h;
  }

  // Cover every populated bin and the Gaussian out to 6 sigma.
  const auto reach = static_cast<std::int64_t>(std::ceil(6.0 * std::sqrt(sigma2) / width));
  const std::int64_t lo = std::min(counts.begin()->first, -reach);
  const std::int64_t hi = std::max(counts.rbegin()->first, reach);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi * sigma2));
  for (std::int64_t bin = lo; bin <= hi; ++bin) {
    const double center = static_cast<double>(bin) * width;
    const auto it = counts.find(bin);
    const std::int64_t count = it == counts.end() ? 0 : it->second;
    const double expected = total * width * norm * std::exp(-center * center / (2.0 * sigma2));
    h.bins.push_back({center, count, expected});
    if (expected >= min_expected) {
      const double diff = static_cast<double>(count) - expected;
      h.chi2 += diff * diff / expected;
      ++h.dof;
    }
  }
  return h;
}

NormalityHistogram normality_histogram(std::span<const FieldPath> paths, std::size_t n, const NoiseParams& params,
                                       double min_expected) {
  const auto values = values_at(paths, n);
  return normality_histogram(values, static_cast<std::int64_t>(n), params, min_expected);
}

}  // namespace jcmsim
