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

#include "jcmsim/rotation.hpp"

#include <cmath>
#include <stdexcept>

namespace jcmsim {

StateVector apply_atom_rotation(StateVector s, double half_angle) {
  const Eigen::Index n = s.size();
  Eigen::VectorXd re = s.amplitudes().real();
  Eigen::VectorXd im = s.amplitudes().imag();
  const double c = std::cos(half_angle);
  const double sn = std::sin(half_angle);
  apply_atom_rotation_lanes<1>(s.truncation(), &c, &sn, re.data(), im.data());
  for (Eigen::Index i = 0; i < n; ++i) {
    s.amplitudes()(i) = Complex(re(i), im(i));
  }
  return s;
}

RotationTable::RotationTable(double time_step, double delta_e, std::int32_t max_level) : max_level_(max_level) {
  if (max_level < 0) {
    throw std::invalid_argument("rotation table needs a non-negative level bound");
  }
  const auto size = static_cast<std::size_t>(2 * static_cast<std::int64_t>(max_level) + 1);
  cos_.resize(size);
  sin_.resize(size);
  for (std::int32_t level = -max_level; level <= max_level; ++level) {
    const double theta = AtomRotation::from_field(time_step, static_cast<double>(level) * delta_e).half_angle;
    cos_[static_cast<std::size_t>(level + max_level)] = std::cos(theta);
    sin_[static_cast<std::size_t>(level + max_level)] = std::sin(theta);
  }
}

}  // namespace jcmsim
