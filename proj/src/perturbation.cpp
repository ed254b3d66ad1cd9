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

#include "jcmsim/perturbation.hpp"

#include <limits>
#include <stdexcept>

namespace jcmsim {

namespace {

/// t - (exp(i w t) - 1) / (i w), with the w -> 0 limit 0.
Complex secular_term(double t, double w) {
  const Complex i(0.0, 1.0);
  return t - (std::exp(i * (w * t)) - 1.0) / (i * w);
}

}  // namespace

Complex second_order_coefficient(double t, double field_sq, double g) {
  if (!(g > 0.0)) {
    throw std::invalid_argument("second-order coefficient needs g > 0");
  }
  if (t == 0.0) {
    return {0.0, 0.0};
  }
  const double r2 = std::numbers::sqrt2;
  const double a = 1.0 - r2;
  const double b = 1.0 + r2;
  const Complex bracket = kGroundCouplingRatio * secular_term(t, g) +
                          kDressed1CouplingRatio / a * secular_term(t, a * g) +
                          kDressed1CouplingRatio / b * secular_term(t, b * g);
  return Complex(0.0, -field_sq / g) * bracket;
}

PerturbativePrediction perturbative_prediction(const JcmParams& jcm, const NoiseParams& noise) {
  jcm.validate();
  PerturbativePrediction pred;
  const double n = static_cast<double>(jcm.steps);
  const double scale = 9.0 * std::numbers::pi * std::numbers::pi / 4.0;
  pred.coefficient = scale * noise.delta_e * noise.delta_e * noise.p * n / (jcm.g * jcm.g);
  pred.gate_time = jcm.gate_time();
  pred.t_min = noise.p > 0.0 ? jcm.time_step() / (2.0 * noise.p) : std::numeric_limits<double>::infinity();
  pred.t_max = 1.0 / jcm.g;
  const double log_rest = 2.0 * std::log(noise.delta_e) + std::log(noise.p) + std::log(n) - 2.0 * std::log(jcm.g);
  pred.intercept_analytic = kAnalyticLogConstant + log_rest;
  pred.intercept_empirical = kEmpiricalLogConstant + log_rest;
  return pred;
}

PredictedFidelity predicted_fidelity(double t_over_T, const JcmParams& jcm, const NoiseParams& noise) {
  const auto pred = perturbative_prediction(jcm, noise);
  PredictedFidelity out;
  out.one_minus_fidelity = pred.one_minus_fidelity(t_over_T);
  out.fidelity = 1.0 - out.one_minus_fidelity;
  out.in_window = pred.in_window(t_over_T);
  return out;
}

ValidityWindow validity_window(const JcmParams& jcm, const NoiseParams& noise) {
  jcm.validate();
  if (!(noise.p > 0.0)) {
    throw std::invalid_argument("validity window undefined for p = 0");
  }
  ValidityWindow w;
  w.t_min = jcm.time_step() / (2.0 * noise.p);
  w.t_max = 1.0 / jcm.g;
  const double T = jcm.gate_time();
  w.t_min_over_T = w.t_min / T;
  w.t_max_over_T = w.t_max / T;
  return w;
}

}  // namespace jcmsim
