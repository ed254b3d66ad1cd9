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

#ifndef JCMSIM_STATE_HPP
#define JCMSIM_STATE_HPP

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace jcmsim {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// 2x2 atom operator in (e, g) ordering: |e> = (1,0)^T, |g> = (0,1)^T.
using AtomMatrix = Eigen::Matrix2cd;

enum class Atom { g, e };

/// Pure state of one two-level atom and one cavity mode truncated at K photons.
///
/// Amplitudes are stored as [(g,0), ..., (g,K), (e,0), ..., (e,K)].
class StateVector {
 public:
  explicit StateVector(int truncation);
  StateVector(int truncation, Amplitudes amplitudes);

  static StateVector basis(Atom atom, int photons, int truncation);

  int truncation() const { return truncation_; }
  Eigen::Index size() const { return amplitudes_.size(); }

  static Eigen::Index index(Atom atom, int photons, int truncation) {
    return atom == Atom::g ? photons : truncation + 1 + photons;
  }

  Complex& operator()(Atom atom, int photons) { return amplitudes_(index(atom, photons, truncation_)); }
  const Complex& operator()(Atom atom, int photons) const {
    return amplitudes_(index(atom, photons, truncation_));
  }

  Amplitudes& amplitudes() { return amplitudes_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }

  double squared_norm() const { return amplitudes_.squaredNorm(); }

 private:
  int truncation_;
  Amplitudes amplitudes_;
};

enum class InitialPreset {
  equal_superposition_g012,  // (|g,0> + |g,1> + |g,2>)/sqrt(3)
  dressed_0_plus,            // (|e,0> + |g,1>)/sqrt(2)
  bare_g1,                   // |g,1>
};

/// Short names used on the command line and in config files: "g012", "0plus", "g1".
InitialPreset parse_preset(std::string_view name);
std::string_view preset_name(InitialPreset preset);

StateVector make_initial_state(InitialPreset preset, int truncation);

/// Normalizes a caller-supplied amplitude list of length 2(K+1).
StateVector make_initial_state(std::span<const Complex> amplitudes, int truncation);

/// <a|b>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Label of an eigenvector of the interaction Hamiltonian.
struct DressedIndex {
  enum class Kind { ground0, plus, minus };
  Kind kind = Kind::ground0;
  int n = 0;

  static DressedIndex ground0() { return {Kind::ground0, 0}; }
  static DressedIndex plus(int n) { return {Kind::plus, n}; }
  static DressedIndex minus(int n) { return {Kind::minus, n}; }
};

/// Coefficients in the basis {|g,0>, |n+->} = (|e,n> +- |g,n+1>)/sqrt(2), n = 0..K-1.
///
/// |e,K> has no |g,K+1> partner inside the truncation; its amplitude is kept
/// verbatim in `top_excited`.
struct DressedCoefficients {
  int truncation = 0;
  Complex ground0{};
  std::vector<Complex> plus;
  std::vector<Complex> minus;
  Complex top_excited{};

  Complex operator[](DressedIndex index) const;
};

DressedCoefficients bare_to_dressed(const StateVector& s);
StateVector dressed_to_bare(const DressedCoefficients& d);

/// |n+-> as a bare-basis vector.
StateVector dressed_state(DressedIndex index, int truncation);

/// Tr_P |s><s| in (e, g) ordering. Trace equals the squared norm of s.
AtomMatrix reduced_atom_density(const StateVector& s);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double squared_length() const { return x * x + y * y + z * z; }
};

/// S_i = Tr(rho sigma_i) after renormalizing rho by its trace.
///
/// Throws std::domain_error when the trace vanishes.
BlochVector bloch_from_density(const AtomMatrix& rho);

}  // namespace jcmsim

#endif  // JCMSIM_STATE_HPP
