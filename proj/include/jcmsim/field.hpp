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

#ifndef JCMSIM_FIELD_HPP
#define JCMSIM_FIELD_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "jcmsim/stats.hpp"

namespace jcmsim {

/// Parameters of the three-branch random-walk field.
struct NoiseParams {
  double p = 0.2;          // probability of each of the -dE and +dE branches
  double delta_e = 100.0;  // step amplitude, rad/s
  std::uint64_t master_seed = 20140101;
  std::int64_t samples = 40000;

  /// Throws std::invalid_argument unless 0 <= p <= 1/2, dE >= 0 and M >= 1.
  void validate() const;
};

/// Independent uniform stream for one Monte Carlo sample.
///
/// A 64-bit Mersenne Twister seeded through std::seed_seq with the four
/// 32-bit halves of (master_seed, stream_id). Each draw consumes one engine
/// output; the top 53 bits become a double in [0, 1).
class StreamRng {
 public:
  StreamRng(std::uint64_t master_seed, std::uint64_t stream_id);

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// -1, 0 or +1 for r in [0, p), [p, 1-p), [1-p, 1).
inline int step_direction(double r, double p) {
  return static_cast<int>(r >= 1.0 - p) - static_cast<int>(r < p);
}

/// One update of the field. Throws std::invalid_argument unless r is in [0, 1).
double next_field(double field, double r, const NoiseParams& params);

/// E(0..n) as integer multiples of dE; E(0) = 0.
struct FieldPath {
  double delta_e = 0.0;
  std::vector<std::int32_t> levels;

  std::size_t steps() const { return levels.empty() ? 0 : levels.size() - 1; }
  double value(std::size_t n) const { return static_cast<double>(levels[n]) * delta_e; }
};

/// Draws the n-step walk of stream `stream_id`; one uniform per step.
FieldPath generate_path(std::int64_t steps, const NoiseParams& params, std::uint64_t stream_id);

/// Walk levels E(n)/dE of streams [first_stream, first_stream + count) at each
/// checkpoint (ascending). Row = sample, column = checkpoint. Paths are not
/// stored, so large ensembles fit in memory.
std::vector<std::vector<std::int32_t>> sample_levels(std::span<const std::int64_t> checkpoints,
                                                     const NoiseParams& params, std::uint64_t first_stream,
                                                     std::int64_t count);

struct MomentStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double second = 0.0;
  double third = 0.0;
  double fourth = 0.0;
  double stderr_mean = 0.0;
  double stderr_second = 0.0;
  double stderr_third = 0.0;
  double stderr_fourth = 0.0;
};

/// Raw sample moments of field values with standard errors of each mean.
/// Throws std::invalid_argument on an empty sample.
MomentStats moment_stats(std::span<const double> values);

/// Moments of E(n) across paths. Throws on an empty collection or short paths.
MomentStats path_moment_stats(std::span<const FieldPath> paths, std::size_t n);

/// <E(n)^2> = 2 dE^2 p n.
double variance_theory(std::int64_t n, const NoiseParams& params);
/// <E(n)^4> = 12 dE^4 p^2 n^2.
double fourth_moment_theory(std::int64_t n, const NoiseParams& params);

struct HistogramBin {
  double center = 0.0;
  std::int64_t count = 0;
  double expected = 0.0;  // M dE P(center), P normal with variance 2 dE^2 p n
};

struct NormalityHistogram {
  std::vector<HistogramBin> bins;
  bool degenerate = false;  // p = 0 or dE = 0: a single spike at zero
  double chi2 = 0.0;        // over bins with expected count >= min_expected
  int dof = 0;
  double reduced_chi2() const { return dof > 0 ? chi2 / dof : 0.0; }
};

/// Histogram of E(n) with unit-level bins (width dE) against the Gaussian limit.
NormalityHistogram normality_histogram(std::span<const double> values, std::int64_t n, const NoiseParams& params,
                                       double min_expected = 10.0);
NormalityHistogram normality_histogram(std::span<const FieldPath> paths, std::size_t n, const NoiseParams& params,
                                       double min_expected = 10.0);

}  // namespace jcmsim

#endif  // JCMSIM_FIELD_HPP
