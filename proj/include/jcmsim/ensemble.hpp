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

#ifndef JCMSIM_ENSEMBLE_HPP
#define JCMSIM_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "jcmsim/field.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/state.hpp"

namespace jcmsim {

/// Observables of one noisy sample at one recorded step.
struct TrajectoryPoint {
  std::int64_t step = 0;
  double fidelity = 0.0;  // |<psi_0(n dt)|psi(n dt)>|^2
  AtomMatrix atom_density = AtomMatrix::Zero();
  double norm_sq = 0.0;
};

/// Propagates one sample through N steps of U_I(dt) (U'(dt; n dt) (x) I_P).
///
/// Step n rotates the atom with E(n dt) first, then applies the JCM step, so
/// E(0) never enters the dynamics. `reference` holds the noiseless states at
/// recorded_steps(N, record_stride), with N = path.steps().
std::vector<TrajectoryPoint> run_trajectory(const StateVector& initial, const JcmStepOperator& jcm,
                                            const FieldPath& path, std::span<const StateVector> reference,
                                            std::int64_t record_stride);

struct EngineOptions {
  int threads = 1;
  /// Merge per-chunk partial sums in chunk order. Output is then independent
  /// of the thread count and scheduling.
  bool bitrepro = true;
  /// Sample m uses stream first_stream + m, unless stream_ids is non-empty.
  std::uint64_t first_stream = 0;
  std::vector<std::uint64_t> stream_ids;
};

struct EnsemblePoint {
  std::int64_t step = 0;
  double t_over_T = 0.0;
  double fidelity = 0.0;
  double one_minus_fidelity = 0.0;  // accumulated directly, precise when F is close to 1
  double stderr_fidelity = 0.0;
  BlochVector bloch;
  double norm_sq = 0.0;
  AtomMatrix atom_density = AtomMatrix::Zero();
};

struct EnsembleStats {
  std::vector<EnsemblePoint> points;
  std::int64_t samples = 0;
  JcmParams jcm;
  NoiseParams noise;

  const EnsemblePoint& final_point() const { return points.back(); }
};

/// Mixed-state averages over M samples: F(n) = <|<psi_0|psi_m>|^2>, rho_A = <Tr_P |psi_m><psi_m|>.
EnsembleStats run_ensemble(const StateVector& initial, const JcmParams& jcm, const NoiseParams& noise,
                           std::int64_t record_stride, const EngineOptions& options = {});
EnsembleStats run_ensemble(InitialPreset preset, const JcmParams& jcm, const NoiseParams& noise,
                           std::int64_t record_stride, const EngineOptions& options = {});

/// Noiseless Bloch trajectory at recorded_steps(N, stride), from the exact propagator.
std::vector<BlochVector> noiseless_bloch(const StateVector& initial, const JcmParams& jcm, std::int64_t record_stride);

struct ConvergenceRow {
  std::int64_t samples = 0;
  std::uint64_t first_stream = 0;
  EnsemblePoint final_point;
};

/// One ensemble per entry of `sample_counts`, on disjoint consecutive stream ranges.
std::vector<ConvergenceRow> convergence_study(const StateVector& initial, const JcmParams& jcm,
                                              const NoiseParams& noise, std::span<const std::int64_t> sample_counts,
                                              const EngineOptions& options = {});

struct SweepPoint {
  double p = 0.0;
  double delta_e = 0.0;
  double fidelity = 0.0;
  double stderr_fidelity = 0.0;
};

/// F(T) on the grid p_grid x delta_e_grid, row-major in p then dE. Every
/// vertex reuses the same streams, so neighbouring vertices share noise.
std::vector<SweepPoint> sweep_fidelity_surface(const StateVector& initial, std::span<const double> p_grid,
                                               std::span<const double> delta_e_grid, const JcmParams& jcm,
                                               const NoiseParams& noise, const EngineOptions& options = {});

}  // namespace jcmsim

#endif  // JCMSIM_ENSEMBLE_HPP
