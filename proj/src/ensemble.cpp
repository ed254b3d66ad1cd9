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

#include "jcmsim/ensemble.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "jcmsim/rotation.hpp"
#include "jcmsim/stats.hpp"

namespace jcmsim {

namespace {

constexpr int kLanes = 8;
constexpr std::int64_t kChunkSamples = 64;

/// Split storage of the noiseless reference at each recorded step.
struct Reference {
  int dim = 0;
  std::vector<double> re;  // record-major, dim entries per record
  std::vector<double> im;
  std::vector<double> norm4;

  Reference(std::span<const StateVector> states) {
    dim = states.empty() ? 0 : static_cast<int>(states.front().size());
    re.resize(states.size() * static_cast<std::size_t>(dim));
    im.resize(re.size());
    norm4.resize(states.size());
    for (std::size_t r = 0; r < states.size(); ++r) {
      double norm2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        const Complex a = states[r].amplitudes()(i);
        re[r * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)] = a.real();
        im[r * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)] = a.imag();
        norm2 += a.real() * a.real() + a.imag() * a.imag();
      }
      norm4[r] = norm2 * norm2;
    }
  }
};

/// Observables of lane b of a split-storage batch.
TrajectoryPoint observe_lane(const Reference& ref, std::size_t record, int truncation, const double* re,
                             const double* im, int lanes, int b) {
  const int dim = ref.dim;
  const double* rr = ref.re.data() + record * static_cast<std::size_t>(dim);
  const double* ri = ref.im.data() + record * static_cast<std::size_t>(dim);
  double ov_re = 0.0, ov_im = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double pr = re[i * lanes + b], pi = im[i * lanes + b];
    ov_re += rr[i] * pr + ri[i] * pi;
    ov_im += rr[i] * pi - ri[i] * pr;
  }
  TrajectoryPoint point;
  point.fidelity = (ov_re * ov_re + ov_im * ov_im) / ref.norm4[record];

  const int half = truncation + 1;
  double ee = 0.0, gg = 0.0, eg_re = 0.0, eg_im = 0.0;
  for (int k = 0; k < half; ++k) {
    const double gr = re[k * lanes + b], gi = im[k * lanes + b];
    const double er = re[(half + k) * lanes + b], ei = im[(half + k) * lanes + b];
    gg += gr * gr + gi * gi;
    ee += er * er + ei * ei;
    // e * conj(g)
    eg_re += er * gr + ei * gi;
    eg_im += ei * gr - er * gi;
  }
  point.atom_density(0, 0) = ee;
  point.atom_density(1, 1) = gg;
  point.atom_density(0, 1) = Complex(eg_re, eg_im);
  point.atom_density(1, 0) = Complex(eg_re, -eg_im);
  point.norm_sq = ee + gg;
  return point;
}

/// Per-record sums over a contiguous block of samples.
struct PartialSums {
  std::vector<MeanAccumulator> fidelity;
  std::vector<std::array<CompensatedSum, 5>> density;  // ee, gg, Re eg, Im eg, norm

  explicit PartialSums(std::size_t records) : fidelity(records, MeanAccumulator(1.0)), density(records) {}

  void add(std::size_t record, const TrajectoryPoint& p) {
    fidelity[record].add(p.fidelity);
    auto& d = density[record];
    d[0].add(p.atom_density(0, 0).real());
    d[1].add(p.atom_density(1, 1).real());
    d[2].add(p.atom_density(0, 1).real());
    d[3].add(p.atom_density(0, 1).imag());
    d[4].add(p.norm_sq);
  }

  void merge(const PartialSums& other) {
    for (std::size_t r = 0; r < fidelity.size(); ++r) {
      fidelity[r].merge(other.fidelity[r]);
      for (std::size_t j = 0; j < density[r].size(); ++j) {
        density[r][j].merge(other.density[r][j]);
      }
    }
  }
};

/// Everything shared read-only by the workers.
struct Setup {
  StateVector initial;
  JcmStepOperator jcm;
  std::int64_t steps;
  std::int64_t stride;
  double p;
  std::uint64_t master_seed;
  RotationTable rotations;
  Reference reference;
  std::size_t records;
};

/// Runs up to kLanes samples in lock-step and accumulates their observables.
void run_batch(const Setup& setup, std::span<const std::uint64_t> streams, PartialSums& sums) {
  const int K = setup.jcm.truncation;
  const int dim = 2 * (K + 1);
  const int active = static_cast<int>(streams.size());

  std::vector<double> re(static_cast<std::size_t>(dim * kLanes), 0.0);
  std::vector<double> im(re.size(), 0.0);
  for (int b = 0; b < active; ++b) {
    for (int i = 0; i < dim; ++i) {
      re[static_cast<std::size_t>(i * kLanes + b)] = setup.initial.amplitudes()(i).real();
      im[static_cast<std::size_t>(i * kLanes + b)] = setup.initial.amplitudes()(i).imag();
    }
  }
  std::vector<StreamRng> rngs;
  rngs.reserve(static_cast<std::size_t>(active));
  for (int b = 0; b < active; ++b) {
    rngs.emplace_back(setup.master_seed, streams[static_cast<std::size_t>(b)]);
  }
  std::array<std::int32_t, kLanes> level{};
  alignas(64) std::array<double, kLanes> cos_t{};
  alignas(64) std::array<double, kLanes> sin_t{};

  auto record = [&](std::size_t r) {
    for (int b = 0; b < active; ++b) {
      sums.add(r, observe_lane(setup.reference, r, K, re.data(), im.data(), kLanes, b));
    }
  };

  record(0);
  std::size_t next_record = 1;
  std::int64_t next_record_step = std::min(setup.stride, setup.steps);
  for (std::int64_t n = 1; n <= setup.steps; ++n) {
    for (int b = 0; b < active; ++b) {
      level[static_cast<std::size_t>(b)] += step_direction(rngs[static_cast<std::size_t>(b)].uniform(), setup.p);
    }
    for (int b = 0; b < kLanes; ++b) {
      cos_t[static_cast<std::size_t>(b)] = setup.rotations.cos(level[static_cast<std::size_t>(b)]);
      sin_t[static_cast<std::size_t>(b)] = setup.rotations.sin(level[static_cast<std::size_t>(b)]);
    }
    apply_atom_rotation_lanes<kLanes>(K, cos_t.data(), sin_t.data(), re.data(), im.data());
    apply_jcm_step_lanes<kLanes>(setup.jcm, re.data(), im.data());
    if (n == next_record_step) {
      record(next_record);
      ++next_record;
      next_record_step = std::min(next_record_step + setup.stride, setup.steps);
    }
  }
}

EnsemblePoint finish_point(const PartialSums& sums, std::size_t r, std::int64_t step, std::int64_t steps) {
  EnsemblePoint point;
  point.step = step;
  point.t_over_T = static_cast<double>(step) / static_cast<double>(steps);
  point.fidelity = sums.fidelity[r].mean();
  point.one_minus_fidelity = -sums.fidelity[r].shifted_mean();
  point.stderr_fidelity = sums.fidelity[r].standard_error();
  const double m = static_cast<double>(sums.fidelity[r].count);
  const auto& d = sums.density[r];
  point.atom_density(0, 0) = d[0].value() / m;
  point.atom_density(1, 1) = d[1].value() / m;
  point.atom_density(0, 1) = Complex(d[2].value() / m, d[3].value() / m);
  point.atom_density(1, 0) = std::conj(point.atom_density(0, 1));
  point.norm_sq = d[4].value() / m;
  point.bloch = bloch_from_density(point.atom_density);
  return point;
}

}  // namespace

std::vector<TrajectoryPoint> run_trajectory(const StateVector& initial, const JcmStepOperator& jcm,
                                            const FieldPath& path, std::span<const StateVector> reference,
                                            std::int64_t record_stride) {
  if (initial.truncation() != jcm.truncation) {
    throw std::invalid_argument("initial state and step operator have different truncations");
  }
  const auto steps = static_cast<std::int64_t>(path.steps());
  const auto record_at = recorded_steps(steps, record_stride);
  if (reference.size() != record_at.size()) {
    throw std::invalid_argument("reference series has " + std::to_string(reference.size()) +
                                " entries, expected " + std::to_string(record_at.size()));
  }
  for (const auto& ref : reference) {
    if (ref.truncation() != initial.truncation()) {
      throw std::invalid_argument("reference state has a different truncation");
    }
  }
  const Reference ref(reference);
  const int K = initial.truncation();
  const int dim = 2 * (K + 1);
  std::vector<double> re(static_cast<std::size_t>(dim)), im(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    re[static_cast<std::size_t>(i)] = initial.amplitudes()(i).real();
    im[static_cast<std::size_t>(i)] = initial.amplitudes()(i).imag();
  }

  std::vector<TrajectoryPoint> out;
  out.reserve(record_at.size());
  auto record = [&](std::size_t r) {
    TrajectoryPoint point = observe_lane(ref, r, K, re.data(), im.data(), 1, 0);
    point.step = record_at[r];
    out.push_back(point);
  };
  record(0);
  std::size_t next_record = 1;
  for (std::int64_t n = 1; n <= steps; ++n) {
    const double theta = AtomRotation::from_field(jcm.time_step, path.value(static_cast<std::size_t>(n))).half_angle;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    apply_atom_rotation_lanes<1>(K, &c, &s, re.data(), im.data());
    apply_jcm_step_lanes<1>(jcm, re.data(), im.data());
    if (next_record < record_at.size() && n == record_at[next_record]) {
      record(next_record++);
    }
  }
  return out;
}

EnsembleStats run_ensemble(const StateVector& initial, const JcmParams& jcm, const NoiseParams& noise,
                           std::int64_t record_stride, const EngineOptions& options) {
  jcm.validate();
  noise.validate();
  if (initial.truncation() != jcm.truncation) {
    throw std::invalid_argument("initial state truncation does not match K");
  }
  if (!options.stream_ids.empty() && static_cast<std::int64_t>(options.stream_ids.size()) != noise.samples) {
    throw std::invalid_argument("explicit stream list must have M entries");
  }
  if (jcm.steps > std::numeric_limits<std::int32_t>::max() / 2) {
    throw std::invalid_argument("step count too large for the walk level table");
  }
  const auto reference = reference_trajectory(initial, jcm, record_stride);
  const auto record_at = recorded_steps(jcm.steps, record_stride);
  const Setup setup{initial,
                    build_step_operator(jcm),
                    jcm.steps,
                    record_stride,
                    noise.p,
                    noise.master_seed,
                    RotationTable(jcm.time_step(), noise.delta_e, static_cast<std::int32_t>(jcm.steps)),
                    Reference(reference),
                    record_at.size()};

  std::vector<std::uint64_t> streams = options.stream_ids;
  if (streams.empty()) {
    streams.resize(static_cast<std::size_t>(noise.samples));
    for (std::size_t m = 0; m < streams.size(); ++m) {
      streams[m] = options.first_stream + m;
    }
  }

  const std::int64_t chunks = (noise.samples + kChunkSamples - 1) / kChunkSamples;
  auto run_chunk = [&](std::int64_t chunk) {
    PartialSums sums(setup.records);
    const std::int64_t begin = chunk * kChunkSamples;
    const std::int64_t end = std::min(begin + kChunkSamples, noise.samples);
    for (std::int64_t b = begin; b < end; b += kLanes) {
      const std::int64_t count = std::min<std::int64_t>(kLanes, end - b);
      run_batch(setup, std::span(streams).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(count)), sums);
    }
    return sums;
  };

  PartialSums total(setup.records);
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(chunks)));
  if (threads == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      total.merge(run_chunk(c));
    }
  } else {
    std::atomic<std::int64_t> next_chunk{0};
    std::mutex merge_mutex;
    std::vector<std::optional<PartialSums>> pending(static_cast<std::size_t>(chunks));
    std::int64_t next_merge = 0;
    std::exception_ptr failure;
    auto worker = [&] {
      try {
        for (std::int64_t c = next_chunk++; c < chunks; c = next_chunk++) {
          PartialSums sums = run_chunk(c);
          const std::lock_guard lock(merge_mutex);
          if (!options.bitrepro) {
            total.merge(sums);
            continue;
          }
          pending[static_cast<std::size_t>(c)].emplace(std::move(sums));
          while (next_merge < chunks && pending[static_cast<std::size_t>(next_merge)]) {
            total.merge(*pending[static_cast<std::size_t>(next_merge)]);
            pending[static_cast<std::size_t>(next_merge)].reset();
            ++next_merge;
          }
        }
      } catch (...) {
        const std::lock_guard lock(merge_mutex);
        if (!failure) failure = std::current_exception();
        next_chunk = chunks;
      }
    };
    {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
  }

  EnsembleStats stats;
  stats.samples = noise.samples;
  stats.jcm = jcm;
  stats.noise = noise;
  stats.points.reserve(setup.records);
  for (std::size_t r = 0; r < setup.records; ++r) {
    stats.points.push_back(finish_point(total, r, record_at[r], jcm.steps));
  }
  return stats;
}

EnsembleStats run_ensemble(InitialPreset preset, const JcmParams& jcm, const NoiseParams& noise,
                           std::int64_t record_stride, const EngineOptions& options) {
  return run_ensemble(make_initial_state(preset, jcm.truncation), jcm, noise, record_stride, options);
}

std::vector<BlochVector> noiseless_bloch(const StateVector& initial, const JcmParams& jcm,
                                         std::int64_t record_stride) {
  std::vector<BlochVector> out;
  for (const auto& s : reference_trajectory(initial, jcm, record_stride)) {
    out.push_back(bloch_from_density(reduced_atom_density(s)));
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(const StateVector& initial, const JcmParams& jcm,
                                              const NoiseParams& noise, std::span<const std::int64_t> sample_counts,
                                              const EngineOptions& options) {
  if (sample_counts.empty()) {
    throw std::invalid_argument("convergence study needs at least one sample count");
  }
  std::vector<ConvergenceRow> rows;
  std::uint64_t first = options.first_stream;
  for (const std::int64_t m : sample_counts) {
    NoiseParams n = noise;
    n.samples = m;
    EngineOptions o = options;
    o.first_stream = first;
    o.stream_ids.clear();
    const auto stats = run_ensemble(initial, jcm, n, jcm.steps, o);
    rows.push_back({m, first, stats.final_point()});
    first += static_cast<std::uint64_t>(m);
  }
  return rows;
}

std::vector<SweepPoint> sweep_fidelity_surface(const StateVector& initial, std::span<const double> p_grid,
                                               std::span<const double> delta_e_grid, const JcmParams& jcm,
                                               const NoiseParams& noise, const EngineOptions& options) {
  if (p_grid.empty() || delta_e_grid.empty()) {
    throw std::invalid_argument("sweep grids must be non-empty");
  }
  for (const double p : p_grid) {
    if (!(p >= 0.0 && p <= 0.5)) {
      throw std::invalid_argument("sweep p value " + std::to_string(p) + " outside [0, 1/2]");
    }
  }
  std::vector<SweepPoint> out;
  out.reserve(p_grid.size() * delta_e_grid.size());
  for (const double p : p_grid) {
    for (const double de : delta_e_grid) {
      NoiseParams n = noise;
      n.p = p;
      n.delta_e = de;
      const auto stats = run_ensemble(initial, jcm, n, jcm.steps, options);
      const auto& last = stats.final_point();
      out.push_back({p, de, last.fidelity, last.stderr_fidelity});
    }
  }
  return out;
}

}  // namespace jcmsim
