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

#ifndef JCMSIM_JCM_HPP
#define JCMSIM_JCM_HPP

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "jcmsim/state.hpp"

namespace jcmsim {

/// Resonant Jaynes-Cummings parameters in the interaction picture.
///
/// All rates are angular (rad/s); hbar never appears. The gate time is
/// T = (2m+1) pi / (sqrt(2) g), the instant at which |g,2> -> -|g,2>.
struct JcmParams {
  double g = 1.0e6 / 70.0;
  int truncation = 5;
  int gate_index = 1;
  std::int64_t steps = 100000;

  // Atomic-transition metadata, unused by the interaction-picture dynamics.
  double transition_frequency_hz = 21456.0e6;
  double wavelength_m = 1.39724e-2;

  double gate_time() const {
    return (2.0 * gate_index + 1.0) * std::numbers::pi / (std::numbers::sqrt2 * g);
  }
  double time_step() const { return gate_time() / static_cast<double>(steps); }

  /// Throws std::invalid_argument on g <= 0, K < 0, m < 0 or N < 1.
  void validate() const;
};

/// Sign of g; g is taken real and positive throughout.
inline constexpr double kCouplingPhase = 1.0;

/// One Delta t of U_I restricted to K photons.
///
/// Pair k = 1..K rotates (|g,k>, |e,k-1>) by angle g sqrt(k) dt. |g,0> is
/// invariant. |e,K> would couple to |g,K+1>, which is outside the space, so
/// it is only multiplied by cos(g sqrt(K+1) dt) and the state leaks norm.
struct JcmStepOperator {
  int truncation = 0;
  double time_step = 0.0;
  std::vector<double> cos_pair;  // index k-1 for pair k
  std::vector<double> sin_pair;
  double top_cos = 1.0;
};

JcmStepOperator build_step_operator(const JcmParams& params);
JcmStepOperator build_step_operator(double g, double time_step, int truncation);

/// In-place step on split real/imaginary storage laid out like StateVector
/// with `Lanes` independent samples interleaved per basis entry.
template <int Lanes, typename Real>
inline void apply_jcm_step_lanes(const JcmStepOperator& op, Real* re, Real* im) {
  using Lane = Eigen::Array<Real, Lanes, 1>;
  const int K = op.truncation;
  for (int k = 1; k <= K; ++k) {
    const Real c = op.cos_pair[static_cast<std::size_t>(k - 1)];
    const Real s = kCouplingPhase * op.sin_pair[static_cast<std::size_t>(k - 1)];
    Eigen::Map<Lane> gr(re + k * Lanes), gi(im + k * Lanes);
    Eigen::Map<Lane> er(re + (K + k) * Lanes), ei(im + (K + k) * Lanes);
    const Lane g_re = gr, g_im = gi, e_re = er, e_im = ei;
    // |g,k> -> c|g,k> - i s|e,k-1>,  |e,k-1> -> -i s|g,k> + c|e,k-1>
    gr = c * g_re + s * e_im;
    gi = c * g_im - s * e_re;
    er = c * e_re + s * g_im;
    ei = c * e_im - s * g_re;
  }
  Eigen::Map<Lane>(re + (2 * K + 1) * Lanes) *= op.top_cos;
  Eigen::Map<Lane>(im + (2 * K + 1) * Lanes) *= op.top_cos;
}

StateVector apply_jcm_step(StateVector s, const JcmStepOperator& op);

/// Raised when a state carries amplitude on |e,K>, where the exact dressed
/// evolution is undefined; raise K.
class TruncationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed-form U_I(t) via dressed phases exp(-+ i g sqrt(n+1) t).
StateVector exact_evolve(const StateVector& s, double t, const JcmParams& params);

struct NsGateCoefficients {
  double error_probability;  // |c(m)|^2
  double d;                  // coefficient of |g,1>
};

NsGateCoefficients ns_gate_coeffs(int gate_index);

/// Step indices at which trajectories are recorded: 0, stride, 2 stride, ...
/// and always the final step N.
std::vector<std::int64_t> recorded_steps(std::int64_t steps, std::int64_t stride);

/// Noiseless states at each of recorded_steps(N, stride).
std::vector<StateVector> reference_trajectory(const StateVector& initial, const JcmParams& params,
                                              std::int64_t record_stride);

}  // namespace jcmsim

#endif  // JCMSIM_JCM_HPP
