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

#include "jcmsim/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jcmsim {

namespace {

void require_truncation(int truncation) {
  if (truncation < 0) {
    throw std::invalid_argument("truncation must be non-negative, got " + std::to_string(truncation));
  }
}

}  // namespace

StateVector::StateVector(int truncation) : truncation_(truncation) {
  require_truncation(truncation);
  amplitudes_ = Amplitudes::Zero(2 * (truncation + 1));
}

StateVector::StateVector(int truncation, Amplitudes amplitudes)
    : truncation_(truncation), amplitudes_(std::move(amplitudes)) {
  require_truncation(truncation);
  if (amplitudes_.size() != 2 * (truncation + 1)) {
    throw std::invalid_argument("amplitude list has length " + std::to_string(amplitudes_.size()) +
                                ", expected " + std::to_string(2 * (truncation + 1)));
  }
}

StateVector StateVector::basis(Atom atom, int photons, int truncation) {
  if (photons < 0 || photons > truncation) {
    throw std::out_of_range("photon number " + std::to_string(photons) + " outside [0, " +
                            std::to_string(truncation) + "]");
  }
  StateVector s(truncation);
  s(atom, photons) = 1.0;
  return s;
}

InitialPreset parse_preset(std::string_view name) {
  if (name == "g012" || name == "equal_superposition_g012") return InitialPreset::equal_superposition_g012;
  if (name == "0plus" || name == "dressed_0_plus") return InitialPreset::dressed_0_plus;
  if (name == "g1" || name == "bare_g1") return InitialPreset::bare_g1;
  throw std::invalid_argument("unknown initial preset '" + std::string(name) + "' (expected g012, 0plus or g1)");
}

std::string_view preset_name(InitialPreset preset) {
  switch (preset) {
    case InitialPreset::equal_superposition_g012:
      return "g012";
    case InitialPreset::dressed_0_plus:
      return "0plus";
    case InitialPreset::bare_g1:
      return "g1";
  }
  return "?";
}

StateVector make_initial_state(InitialPreset preset, int truncation) {
  if (truncation < 2) {
    throw std::invalid_argument("presets need K >= 2, got K = " + std::to_string(truncation));
  }
  StateVector s(truncation);
  switch (preset) {
    case InitialPreset::equal_superposition_g012: {
      const double a = 1.0 / std::sqrt(3.0);
      s(Atom::g, 0) = a;
      s(Atom::g, 1) = a;
      s(Atom::g, 2) = a;
      break;
    }
    case InitialPreset::dressed_0_plus: {
      const double a = 1.0 / std::sqrt(2.0);
      s(Atom::e, 0) = a;
      s(Atom::g, 1) = a;
      break;
    }
    case InitialPreset::bare_g1:
      s(Atom::g, 1) = 1.0;
      break;
  }
  return s;
}

StateVector make_initial_state(std::span<const Complex> amplitudes, int truncation) {
  require_truncation(truncation);
  Amplitudes v = Eigen::Map<const Amplitudes>(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
  StateVector s(truncation, std::move(v));
  const double norm = std::sqrt(s.squared_norm());
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("custom initial state cannot be normalized");
  }
  s.amplitudes() /= norm;
  return s;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.truncation() != b.truncation()) {
    throw std::invalid_argument("inner product of states with K = " + std::to_string(a.truncation()) +
                                " and K = " + std::to_string(b.truncation()));
  }
  return a.amplitudes().dot(b.amplitudes());
}

Complex DressedCoefficients::operator[](DressedIndex index) const {
  switch (index.kind) {
    case DressedIndex::Kind::ground0:
      return ground0;
    case DressedIndex::Kind::plus:
      return plus.at(static_cast<std::size_t>(index.n));
    case DressedIndex::Kind::minus:
      return minus.at(static_cast<std::size_t>(index.n));
  }
  return {};
}

DressedCoefficients bare_to_dressed(const StateVector& s) {
  const int K = s.truncation();
  const double r = 1.0 / std::sqrt(2.0);
  DressedCoefficients d;
  d.truncation = K;
  d.ground0 = s(Atom::g, 0);
  d.plus.resize(static_cast<std::size_t>(K));
  d.minus.resize(static_cast<std::size_t>(K));
  for (int n = 0; n < K; ++n) {
    const Complex e = s(Atom::e, n);
    const Complex g = s(Atom::g, n + 1);
    d.plus[static_cast<std::size_t>(n)] = r * (e + g);
    d.minus[static_cast<std::size_t>(n)] = r * (e - g);
  }
  d.top_excited = s(Atom::e, K);
  return d;
}

StateVector dressed_to_bare(const DressedCoefficients& d) {
  const int K = d.truncation;
  if (d.plus.size() != static_cast<std::size_t>(K) || d.minus.size() != static_cast<std::size_t>(K)) {
    throw std::invalid_argument("dressed coefficient lists do not match the truncation");
  }
  const double r = 1.0 / std::sqrt(2.0);
  StateVector s(K);
  s(Atom::g, 0) = d.ground0;
  for (int n = 0; n < K; ++n) {
    const Complex p = d.plus[static_cast<std::size_t>(n)];
    const Complex m = d.minus[static_cast<std::size_t>(n)];
    s(Atom::e, n) = r * (p + m);
    s(Atom::g, n + 1) = r * (p - m);
  }
  s(Atom::e, K) = d.top_excited;
  return s;
}

StateVector dressed_state(DressedIndex index, int truncation) {
  if (index.kind == DressedIndex::Kind::ground0) {
    return StateVector::basis(Atom::g, 0, truncation);
  }
  if (index.n < 0 || index.n > truncation - 1) {
    throw std::out_of_range("dressed level n = " + std::to_string(index.n) + " needs n <= K-1");
  }
  const double r = 1.0 / std::sqrt(2.0);
  StateVector s(truncation);
  s(Atom::e, index.n) = r;
  s(Atom::g, index.n + 1) = index.kind == DressedIndex::Kind::plus ? r : -r;
  return s;
}

AtomMatrix reduced_atom_density(const StateVector& s) {
  const int K = s.truncation();
  const auto& a = s.amplitudes();
  const auto g = a.head(K + 1);
  const auto e = a.tail(K + 1);
  AtomMatrix rho;
  rho(0, 0) = e.squaredNorm();
  rho(1, 1) = g.squaredNorm();
  // rho_eg = sum_k <e,k|s><s|g,k>
  rho(0, 1) = g.dot(e);
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

BlochVector bloch_from_density(const AtomMatrix& rho) {
  const double trace = rho.trace().real();
  if (!(std::abs(trace) > 0.0)) {
    throw std::domain_error("Bloch vector of a density matrix with zero trace");
  }
  const Complex eg = rho(0, 1) / trace;
  return {2.0 * eg.real(), -2.0 * eg.imag(), (rho(0, 0).real() - rho(1, 1).real()) / trace};
}

}  // namespace jcmsim
