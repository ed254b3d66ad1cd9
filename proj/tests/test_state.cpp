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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "jcmsim/state.hpp"
#include "oracle.hpp"

namespace {

using namespace jcmsim;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

void expect_only(const StateVector& s, std::vector<std::pair<Eigen::Index, Complex>> nonzero) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    Complex want = 0.0;
    for (auto [j, v] : nonzero) {
      if (j == i) want = v;
    }
    EXPECT_NEAR(std::abs(s.amplitudes()(i) - want), 0.0, 1e-15) << "index " << i;
  }
}

TEST(StateVector, LayoutIsGroundBlockThenExcitedBlock) {
  StateVector s(5);
  EXPECT_EQ(s.size(), 12);
  EXPECT_EQ(StateVector::index(Atom::g, 0, 5), 0);
  EXPECT_EQ(StateVector::index(Atom::g, 5, 5), 5);
  EXPECT_EQ(StateVector::index(Atom::e, 0, 5), 6);
  EXPECT_EQ(StateVector::index(Atom::e, 5, 5), 11);
}

TEST(StateVector, RejectsBadLengthsAndTruncations) {
  EXPECT_THROW(StateVector(-1), std::invalid_argument);
  EXPECT_THROW(StateVector(2, Eigen::VectorXcd::Zero(5)), std::invalid_argument);
  EXPECT_THROW(StateVector::basis(Atom::g, 3, 2), std::out_of_range);
  EXPECT_THROW(StateVector::basis(Atom::e, -1, 2), std::out_of_range);
}

TEST(InitialState, EqualSuperposition) {
  const auto s = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  expect_only(s, {{0, kInvSqrt3}, {1, kInvSqrt3}, {2, kInvSqrt3}});
  EXPECT_NEAR(kInvSqrt3, 0.57735, 5e-6);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
}

TEST(InitialState, DressedZeroPlus) {
  const auto s = make_initial_state(InitialPreset::dressed_0_plus, 5);
  expect_only(s, {{StateVector::index(Atom::e, 0, 5), kInvSqrt2}, {StateVector::index(Atom::g, 1, 5), kInvSqrt2}});
}

TEST(InitialState, BareG1) {
  const auto s = make_initial_state(InitialPreset::bare_g1, 5);
  expect_only(s, {{1, 1.0}});
}

TEST(InitialState, PresetsNeedTwoPhotons) {
  EXPECT_THROW(make_initial_state(InitialPreset::bare_g1, 1), std::invalid_argument);
  EXPECT_NO_THROW(make_initial_state(InitialPreset::equal_superposition_g012, 2));
}

TEST(InitialState, CustomIsNormalized) {
  std::vector<Complex> amps(12, 0.0);
  amps[0] = 3.0;
  amps[7] = Complex(0.0, 4.0);
  const auto s = make_initial_state(amps, 5);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s(Atom::g, 0) - 0.6), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s(Atom::e, 1) - Complex(0.0, 0.8)), 0.0, 1e-15);
}

TEST(InitialState, CustomRejectsZeroAndWrongLength) {
  std::vector<Complex> zero(12, 0.0);
  EXPECT_THROW(make_initial_state(zero, 5), std::invalid_argument);
  std::vector<Complex> shorty(11, 1.0);
  EXPECT_THROW(make_initial_state(shorty, 5), std::invalid_argument);
}

TEST(Presets, NamesRoundTrip) {
  for (auto p : {InitialPreset::equal_superposition_g012, InitialPreset::dressed_0_plus, InitialPreset::bare_g1}) {
    EXPECT_EQ(parse_preset(preset_name(p)), p);
  }
  EXPECT_EQ(parse_preset("dressed_0_plus"), InitialPreset::dressed_0_plus);
  EXPECT_THROW(parse_preset("g2"), std::invalid_argument);
}

TEST(InnerProduct, BasisExamples) {
  const auto g1 = StateVector::basis(Atom::g, 1, 5);
  const auto g0 = StateVector::basis(Atom::g, 0, 5);
  EXPECT_EQ(inner_product(g1, g1), Complex(1.0));
  EXPECT_EQ(inner_product(g0, g1), Complex(0.0));
  const auto plus0 = make_initial_state(InitialPreset::dressed_0_plus, 5);
  EXPECT_NEAR(std::abs(inner_product(plus0, g1) - kInvSqrt2), 0.0, 1e-15);
}

TEST(InnerProduct, ConjugateLinearInFirstArgument) {
  std::mt19937_64 rng(7);
  const auto a = oracle::random_state(4, rng);
  const auto b = oracle::random_state(4, rng);
  const Complex z(0.3, -1.7);
  StateVector za(4, z * a.amplitudes());
  EXPECT_NEAR(std::abs(inner_product(za, b) - std::conj(z) * inner_product(a, b)), 0.0, 1e-14);
  EXPECT_NEAR(inner_product(a, a).imag(), 0.0, 1e-16);
  EXPECT_GT(inner_product(a, a).real(), 0.0);
}

TEST(InnerProduct, RejectsMismatchedTruncation) {
  EXPECT_THROW(inner_product(StateVector(3), StateVector(4)), std::invalid_argument);
}

TEST(Dressed, Examples) {
  const auto g0 = bare_to_dressed(StateVector::basis(Atom::g, 0, 5));
  EXPECT_EQ(g0.ground0, Complex(1.0));
  for (int n = 0; n < 5; ++n) {
    EXPECT_EQ(g0.plus[n], Complex(0.0));
    EXPECT_EQ(g0.minus[n], Complex(0.0));
  }

  const auto g1 = bare_to_dressed(StateVector::basis(Atom::g, 1, 5));
  EXPECT_NEAR(std::abs(g1[DressedIndex::plus(0)] - kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g1[DressedIndex::minus(0)] + kInvSqrt2), 0.0, 1e-15);

  const auto e0 = bare_to_dressed(StateVector::basis(Atom::e, 0, 5));
  EXPECT_NEAR(std::abs(e0[DressedIndex::plus(0)] - kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e0[DressedIndex::minus(0)] - kInvSqrt2), 0.0, 1e-15);
}

TEST(Dressed, TopLevelGoesToResidualSlot) {
  const auto d = bare_to_dressed(StateVector::basis(Atom::e, 5, 5));
  EXPECT_EQ(d.top_excited, Complex(1.0));
  EXPECT_EQ(d.ground0, Complex(0.0));
}

TEST(Dressed, CoefficientFormula) {
  std::mt19937_64 rng(11);
  const auto s = oracle::random_state(5, rng);
  const auto d = bare_to_dressed(s);
  for (int n = 0; n < 5; ++n) {
    EXPECT_NEAR(std::abs(d.plus[n] - (s(Atom::e, n) + s(Atom::g, n + 1)) * kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d.minus[n] - (s(Atom::e, n) - s(Atom::g, n + 1)) * kInvSqrt2), 0.0, 1e-15);
  }
}

TEST(Dressed, RoundTripProperty) {
  std::mt19937_64 rng(2024);
  for (int K = 0; K <= 8; ++K) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = oracle::random_state(K, rng);
      const auto back = dressed_to_bare(bare_to_dressed(s));
      EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-12);
    }
  }
}

TEST(Dressed, VectorsAreOrthonormal) {
  const int K = 5;
  std::vector<StateVector> basis{dressed_state(DressedIndex::ground0(), K)};
  for (int n = 0; n < K; ++n) {
    basis.push_back(dressed_state(DressedIndex::plus(n), K));
    basis.push_back(dressed_state(DressedIndex::minus(n), K));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      EXPECT_NEAR(std::abs(inner_product(basis[i], basis[j]) - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-15);
    }
  }
  EXPECT_THROW(dressed_state(DressedIndex::plus(K), K), std::out_of_range);
}

TEST(Dressed, ToBareRejectsShortLists) {
  DressedCoefficients d;
  d.truncation = 3;
  d.plus.resize(2);
  d.minus.resize(3);
  EXPECT_THROW(dressed_to_bare(d), std::invalid_argument);
}

TEST(ReducedDensity, Examples) {
  const auto e3 = reduced_atom_density(StateVector::basis(Atom::e, 3, 5));
  EXPECT_EQ(e3(0, 0), Complex(1.0));
  EXPECT_EQ(e3(1, 1), Complex(0.0));
  EXPECT_EQ(e3(0, 1), Complex(0.0));

  StateVector product(5);
  product(Atom::g, 0) = kInvSqrt2;
  product(Atom::e, 0) = kInvSqrt2;
  const auto rho = reduced_atom_density(product);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(rho(i, j) - 0.5), 0.0, 1e-15);
  }

  StateVector entangled(5);
  entangled(Atom::g, 0) = kInvSqrt2;
  entangled(Atom::e, 1) = kInvSqrt2;
  const auto mixed = reduced_atom_density(entangled);
  EXPECT_NEAR(mixed(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(mixed(1, 1).real(), 0.5, 1e-15);
  EXPECT_EQ(mixed(0, 1), Complex(0.0));
}

TEST(ReducedDensity, HermitianTraceAndPositivity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_state(5, rng);
    s.amplitudes() *= 0.9;
    const auto rho = reduced_atom_density(s);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-15);
    EXPECT_NEAR(rho.trace().real(), s.squared_norm(), 1e-14);
    Eigen::SelfAdjointEigenSolver<AtomMatrix> es(rho);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Bloch, Examples) {
  AtomMatrix excited = AtomMatrix::Zero();
  excited(0, 0) = 1.0;
  const auto up = bloch_from_density(excited);
  EXPECT_EQ(up.x, 0.0);
  EXPECT_EQ(up.y, 0.0);
  EXPECT_EQ(up.z, 1.0);

  const auto mixed = bloch_from_density(AtomMatrix::Identity() / 2.0);
  EXPECT_EQ(mixed.squared_length(), 0.0);

  AtomMatrix plus_x = AtomMatrix::Constant(0.5);
  const auto sx = bloch_from_density(plus_x);
  EXPECT_NEAR(sx.x, 1.0, 1e-15);
  EXPECT_NEAR(sx.y, 0.0, 1e-15);
  EXPECT_NEAR(sx.z, 0.0, 1e-15);
}

TEST(Bloch, SignOfSyFollowsPauliTrace) {
  // atom (|e> + i|g>)/sqrt2
  StateVector s(1);
  s(Atom::e, 0) = kInvSqrt2;
  s(Atom::g, 0) = Complex(0.0, kInvSqrt2);
  const AtomMatrix sigma_y{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  const auto rho = reduced_atom_density(s);
  const auto b = bloch_from_density(rho);
  EXPECT_NEAR(b.y, (rho * sigma_y).trace().real(), 1e-15);
}

TEST(Bloch, RejectsZeroTrace) { EXPECT_THROW(bloch_from_density(AtomMatrix::Zero()), std::domain_error); }

TEST(Bloch, GroundStatesPointDown) {
  for (int n = 0; n <= 5; ++n) {
    const auto b = bloch_from_density(reduced_atom_density(StateVector::basis(Atom::g, n, 5)));
    EXPECT_EQ(b.x, 0.0);
    EXPECT_EQ(b.y, 0.0);
    EXPECT_EQ(b.z, -1.0);
  }
}

TEST(Bloch, PureAtomStatesHaveUnitLength) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto atom = oracle::random_state(0, rng);
    StateVector s(5);
    s(Atom::g, 2) = atom(Atom::g, 0);
    s(Atom::e, 2) = atom(Atom::e, 0);
    EXPECT_NEAR(bloch_from_density(reduced_atom_density(s)).squared_length(), 1.0, 1e-9);
  }
}

TEST(Bloch, EqualSuperpositionHasZeroSx) {
  const auto s = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  EXPECT_EQ(bloch_from_density(reduced_atom_density(s)).x, 0.0);
}

TEST(Bloch, TraceDeficitIsRenormalized) {
  AtomMatrix rho = AtomMatrix::Zero();
  rho(0, 0) = 0.5;
  EXPECT_EQ(bloch_from_density(rho).z, 1.0);
}

}  // namespace
