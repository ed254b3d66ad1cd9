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

#ifndef JCMSIM_PERTURBATION_HPP
#define JCMSIM_PERTURBATION_HPP

#include <cmath>
#include <numbers>

#include "jcmsim/field.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/state.hpp"

namespace jcmsim {

// Products <0+|H'|i><i|H'|0+> in units of hbar^2 E^2; every other i gives 0.
inline constexpr double kGroundCouplingRatio = 1.0 / 8.0;   // i = |g,0>
inline constexpr double kDressed1CouplingRatio = 1.0 / 16.0;  // i = |1+> or |1->

/// ln(9 pi^2 / 4), the second-order constant.
inline const double kAnalyticLogConstant = std::log(9.0 * std::numbers::pi * std::numbers::pi / 4.0);
/// Constant of the fitted Monte Carlo relation ln(1-F) = 1.98 + 2 ln dE + ln p + ln N - 2 ln g + b ln(t/T).
inline constexpr double kEmpiricalLogConstant = 1.98;

/// Second-order amplitude c2(t) of <0+| for a frozen field value with E^2 = `field_sq`.
///
/// Keeps the oscillatory terms from the |g,0> and |1+-> intermediate states;
/// tends to -E^2 t^2 / 8 as g t -> 0.
Complex second_order_coefficient(double t, double field_sq, double g);

/// Second-order fidelity law F(t/T) = 1 - C (t/T)^3, C = (9 pi^2/4) dE^2 p N / g^2.
///
/// Shared by the |0+> and |g,1> initial states. The law depends on p N, not on
/// N alone: halving dt at fixed T changes F unless p is halved too. It is
/// valid for dt/(2p) << t << 1/g.
struct PerturbativePrediction {
  double coefficient = 0.0;  // C
  double t_min = 0.0;        // dt/(2p), seconds
  double t_max = 0.0;        // 1/g, seconds
  double gate_time = 0.0;
  double slope = 3.0;
  double intercept_analytic = 0.0;   // ln C with the analytic constant
  double intercept_empirical = 0.0;  // same with 1.98

  double one_minus_fidelity(double t_over_T) const { return coefficient * t_over_T * t_over_T * t_over_T; }
  bool in_window(double t_over_T) const {
    const double t = t_over_T * gate_time;
    return t > t_min && t < t_max;
  }
};

/// Intercepts are -inf when p or dE is zero; the window is then empty (t_min = inf).
PerturbativePrediction perturbative_prediction(const JcmParams& jcm, const NoiseParams& noise);

struct PredictedFidelity {
  double fidelity = 1.0;
  double one_minus_fidelity = 0.0;
  bool in_window = false;
};

/// F at t/T; outside the validity window the value is still returned, flagged.
PredictedFidelity predicted_fidelity(double t_over_T, const JcmParams& jcm, const NoiseParams& noise);

struct ValidityWindow {
  double t_min = 0.0;
  double t_max = 0.0;
  double t_min_over_T = 0.0;
  double t_max_over_T = 0.0;

  bool non_empty() const { return t_min < t_max; }
};

/// (dt/(2p), 1/g). Throws std::invalid_argument when p = 0.
ValidityWindow validity_window(const JcmParams& jcm, const NoiseParams& noise);

}  // namespace jcmsim

#endif  // JCMSIM_PERTURBATION_HPP
