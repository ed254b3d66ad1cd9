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

#ifndef JCMSIM_ROTATION_HPP
#define JCMSIM_ROTATION_HPP

#include <cstdint>
#include <vector>

#include "jcmsim/state.hpp"

namespace jcmsim {

/// exp(-i dt sigma_y E / 2) on the atom, identity on the photons.
///
/// In (e, g) ordering the block is [cos, -sin; sin, cos] with half-angle
/// theta = dt E / 2, applied independently to every photon number k.
struct AtomRotation {
  double half_angle = 0.0;

  static AtomRotation from_field(double time_step, double field) { return {time_step * field / 2.0}; }
};

/// Real rotation of each (|g,k>, |e,k>) pair; `cos_t`/`sin_t` are per lane.
template <int Lanes, typename Real>
inline void apply_atom_rotation_lanes(int truncation, const Real* cos_t, const Real* sin_t, Real* re, Real* im) {
  using Lane = Eigen::Array<Real, Lanes, 1>;
  const Lane c = Eigen::Map<const Lane>(cos_t);
  const Lane s = Eigen::Map<const Lane>(sin_t);
  const int half = truncation + 1;
  for (int k = 0; k <= truncation; ++k) {
    Eigen::Map<Lane> gr(re + k * Lanes), gi(im + k * Lanes);
    Eigen::Map<Lane> er(re + (half + k) * Lanes), ei(im + (half + k) * Lanes);
    const Lane g_re = gr, g_im = gi, e_re = er, e_im = ei;
    gr = c * g_re + s * e_re;
    gi = c * g_im + s * e_im;
    er = c * e_re - s * g_re;
    ei = c * e_im - s * g_im;
  }
}

StateVector apply_atom_rotation(StateVector s, double half_angle);
inline StateVector apply_atom_rotation(StateVector s, AtomRotation rotation) {
  return apply_atom_rotation(std::move(s), rotation.half_angle);
}

/// cos/sin of theta = dt (level dE) / 2 for integer walk levels in
/// [-max_level, max_level]. Entries are computed with the same expression as
/// AtomRotation::from_field, so lookups are bit-identical to direct evaluation.
class RotationTable {
 public:
  RotationTable(double time_step, double delta_e, std::int32_t max_level);

  std::int32_t max_level() const { return max_level_; }
  double cos(std::int32_t level) const { return cos_[static_cast<std::size_t>(level + max_level_)]; }
  double sin(std::int32_t level) const { return sin_[static_cast<std::size_t>(level + max_level_)]; }

 private:
  std::int32_t max_level_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace jcmsim

#endif  // JCMSIM_ROTATION_HPP
