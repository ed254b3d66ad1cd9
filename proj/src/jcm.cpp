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

#include "jcmsim/jcm.hpp"

#include <cmath>
#include <string>

namespace jcmsim {

void JcmParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("coupling g must be finite and positive");
  }
  if (truncation < 0) {
    throw std::invalid_argument("truncation K must be non-negative");
  }
  if (gate_index < 0) {
    throw std::invalid_argument("gate index m must be non-negative");
  }
  if (steps < 1) {
    throw std::invalid_argument("step count N must be at least 1");
  }
}

JcmStepOperator build_step_operator(double g, double time_step, int truncation) {
  JcmStepOperator op;
  op.truncation = truncation;
  op.time_step = time_step;
  op.cos_pair.reserve(static_cast<std::size_t>(truncation));
  op.sin_pair.reserve(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k) {
    const double angle = g * std::sqrt(static_cast<double>(k)) * time_step;
    op.cos_pair.push_back(std::cos(angle));
    op.sin_pair.push_back(std::sin(angle));
  }
  op.top_cos = std::cos(g * std::sqrt(static_cast<double>(truncation + 1)) * time_step);
  return op;
}

JcmStepOperator build_step_operator(const JcmParams& params) {
  params.validate();
  return build_step_operator(params.g, params.time_step(), params.truncation);
}

StateVector apply_jcm_step(StateVector s, const JcmStepOperator& op) {
  if (s.truncation() != op.truncation) {
    throw std::invalid_argument("step operator built for K = " + std::to_string(op.truncation) +
                                ", state has K = " + std::to_string(s.truncation()));
  }
  const Eigen::Index n = s.size();
  Eigen::VectorXd re = s.amplitudes().real();
  Eigen::VectorXd im = s.amplitudes().imag();
  apply_jcm_step_lanes<1>(op, re.data(), im.data());
  for (Eigen::Index i = 0; i < n; ++i) {
    s.amplitudes()(i) = Complex(re(i), im(i));
  }
  return s;
}

StateVector exact_evolve(const StateVector& s, double t, const JcmParams& params) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("exact_evolve needs t >= 0");
  }
  const int K = s.truncation();
  if (std::abs(s(Atom::e, K)) > 1e-12) {
    throw TruncationError("state has amplitude " + std::to_string(std::abs(s(Atom::e, K))) +
                          " on |e,K>; exact evolution needs a larger truncation");
  }
  if (t == 0.0) {
    return s;
  }
  DressedCoefficients d = bare_to_dressed(s);
  for (int n = 0; n < K; ++n) {
    const double phase = kCouplingPhase * params.g * std::sqrt(static_cast<double>(n + 1)) * t;
    const Complex forward = std::polar(1.0, -phase);
    d.plus[static_cast<std::size_t>(n)] *= forward;
    d.minus[static_cast<std::size_t>(n)] *= std::conj(forward);
  }
  return dressed_to_bare(d);
}

NsGateCoefficients ns_gate_coeffs(int gate_index) {
  if (gate_index < 0) {
    throw std::invalid_argument("gate index m must be non-negative");
  }
  const double angle = (2.0 * gate_index + 1.0) * std::numbers::pi / std::numbers::sqrt2;
  const double s = std::sin(angle);
  return {s * s, std::cos(angle)};
}

std::vector<std::int64_t> recorded_steps(std::int64_t steps, std::int64_t stride) {
  if (stride < 1) {
    throw std::invalid_argument("record stride must be at least 1");
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(steps / stride + 2));
  for (std::int64_t n = 0; n < steps; n += stride) {
    out.push_back(n);
  }
  out.push_back(steps);
  return out;
}

std::vector<StateVector> reference_trajectory(const StateVector& initial, const JcmParams& params,
                                              std::int64_t record_stride) {
  params.validate();
  const double dt = params.time_step();
  std::vector<StateVector> series;
  for (const std::int64_t n : recorded_steps(params.steps, record_stride)) {
    series.push_back(exact_evolve(initial, static_cast<double>(n) * dt, params));
  }
  return series;
}

}  // namespace jcmsim
