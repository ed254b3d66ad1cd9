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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "jcmsim/ensemble.hpp"
#include "jcmsim/rotation.hpp"

namespace {

using namespace jcmsim;

// Short gate so that every test runs in milliseconds.
JcmParams short_gate(std::int64_t steps = 2000) {
  JcmParams p;
  p.steps = steps;
  return p;
}

NoiseParams strong_noise(std::int64_t samples, double p = 0.2, double de = 3000.0) {
  NoiseParams n;
  n.p = p;
  n.delta_e = de;
  n.samples = samples;
  return n;
}

EngineOptions threads(int t, bool bitrepro = true) {
  EngineOptions o;
  o.threads = t;
  o.bitrepro = bitrepro;
  return o;
}

void expect_bit_identical(const EnsembleStats& a, const EnsembleStats& b) {
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& x = a.points[i];
    const auto& y = b.points[i];
    EXPECT_EQ(x.fidelity, y.fidelity);
    EXPECT_EQ(x.one_minus_fidelity, y.one_minus_fidelity);
    EXPECT_EQ(x.stderr_fidelity, y.stderr_fidelity);
    EXPECT_EQ(x.bloch.x, y.bloch.x);
    EXPECT_EQ(x.bloch.y, y.bloch.y);
    EXPECT_EQ(x.bloch.z, y.bloch.z);
    EXPECT_EQ(x.norm_sq, y.norm_sq);
  }
}

TEST(Trajectory, ZeroFieldKeepsFidelityOne) {
  const auto jcm = short_gate();
  const auto initial = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  auto noise = strong_noise(1, 0.0);
  const auto path = generate_path(jcm.steps, noise, 0);
  const auto ref = reference_trajectory(initial, jcm, 100);
  for (const auto& pt : run_trajectory(initial, build_step_operator(jcm), path, ref, 100)) {
    EXPECT_NEAR(pt.fidelity, 1.0, 1e-12);
  }
}

TEST(Trajectory, NormNeverIncreases) {
  const auto jcm = short_gate();
  StateVector initial(5);
  initial(Atom::g, 5) = 0.6;
  initial(Atom::e, 5) = 0.8;
  const auto path = generate_path(jcm.steps, strong_noise(1), 4);
  const auto ref = reference_trajectory(make_initial_state(InitialPreset::bare_g1, 5), jcm, 10);
  const auto pts = run_trajectory(initial, build_step_operator(jcm), path, ref, 10);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i].norm_sq, pts[i - 1].norm_sq + 1e-15);
  EXPECT_LT(pts.back().norm_sq, 1.0);
}

TEST(Trajectory, RotationFirstAndInitialFieldUnused) {
  const auto jcm = short_gate(1);
  const auto op = build_step_operator(jcm);
  const auto initial = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  FieldPath path;
  path.delta_e = 2.5e5;
  path.levels = {7, 3};  // E(0) would change the result if it were used
  const auto ref = reference_trajectory(initial, jcm, 1);
  const auto pts = run_trajectory(initial, op, path, ref, 1);

  const auto stepped =
      apply_jcm_step(apply_atom_rotation(initial, AtomRotation::from_field(jcm.time_step(), path.value(1))), op);
  const auto swapped =
      apply_atom_rotation(apply_jcm_step(initial, op), AtomRotation::from_field(jcm.time_step(), path.value(1)));
  const double f_right = std::norm(inner_product(ref[1], stepped));
  const double f_wrong = std::norm(inner_product(ref[1], swapped));
  EXPECT_NEAR(pts[1].fidelity, f_right, 1e-15);
  EXPECT_GT(std::abs(f_right - f_wrong), 1e-9);
}

TEST(Trajectory, ValidatesInputs) {
  const auto jcm = short_gate(100);
  const auto initial = make_initial_state(InitialPreset::bare_g1, 5);
  const auto path = generate_path(100, strong_noise(1), 0);
  const auto ref = reference_trajectory(initial, jcm, 10);
  EXPECT_THROW(run_trajectory(initial, build_step_operator(jcm), path, ref, 20), std::invalid_argument);
  EXPECT_THROW(run_trajectory(StateVector(4), build_step_operator(jcm), path, ref, 10), std::invalid_argument);
}

TEST(Ensemble, ZeroFieldMatchesNoiselessEvolution) {
  const auto jcm = short_gate();
  const auto initial = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  const auto stats = run_ensemble(initial, jcm, strong_noise(20, 0.2, 0.0), 100);
  const auto clean = noiseless_bloch(initial, jcm, 100);
  ASSERT_EQ(stats.points.size(), clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    EXPECT_NEAR(stats.points[i].fidelity, 1.0, 1e-12);
    EXPECT_NEAR(stats.points[i].bloch.x, clean[i].x, 1e-12);
    EXPECT_NEAR(stats.points[i].bloch.y, clean[i].y, 1e-12);
    EXPECT_NEAR(stats.points[i].bloch.z, clean[i].z, 1e-12);
  }
}

TEST(Ensemble, NoiselessSxVanishesForEqualSuperposition) {
  const auto jcm = short_gate();
  for (const auto& b : noiseless_bloch(make_initial_state(InitialPreset::equal_superposition_g012, 5), jcm, 20)) {
    EXPECT_NEAR(b.x, 0.0, 1e-10);
  }
}

TEST(Ensemble, InitialFidelityIsExactlyOne) {
  for (auto preset : {InitialPreset::equal_superposition_g012, InitialPreset::dressed_0_plus, InitialPreset::bare_g1}) {
    const auto stats = run_ensemble(preset, short_gate(), strong_noise(30), 100);
    EXPECT_EQ(stats.points.front().fidelity, 1.0);
    EXPECT_EQ(stats.points.front().one_minus_fidelity, 0.0);
    EXPECT_EQ(stats.points.front().step, 0);
    EXPECT_EQ(stats.points.back().step, 2000);
    EXPECT_EQ(stats.points.back().t_over_T, 1.0);
  }
}

TEST(Ensemble, OutputRangesHold) {
  const auto stats = run_ensemble(InitialPreset::equal_superposition_g012, short_gate(), strong_noise(100), 50);
  for (const auto& pt : stats.points) {
    EXPECT_GE(pt.fidelity, 0.0);
    EXPECT_LE(pt.fidelity, 1.0 + 1e-12);
    EXPECT_LE(pt.bloch.squared_length(), 1.0 + 1e-6);
    EXPECT_LE(pt.norm_sq, 1.0 + 1e-12);
  }
  EXPECT_LT(stats.final_point().fidelity, 0.999);
}

TEST(Ensemble, SingleSampleEqualsTrajectory) {
  const auto jcm = short_gate();
  const auto noise = strong_noise(1);
  const auto initial = make_initial_state(InitialPreset::dressed_0_plus, 5);
  const auto stats = run_ensemble(initial, jcm, noise, 100);
  const auto ref = reference_trajectory(initial, jcm, 100);
  const auto pts = run_trajectory(initial, build_step_operator(jcm), generate_path(jcm.steps, noise, 0), ref, 100);
  ASSERT_EQ(pts.size(), stats.points.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(stats.points[i].fidelity, pts[i].fidelity, 1e-15);
    const auto b = bloch_from_density(pts[i].atom_density);
    EXPECT_NEAR(stats.points[i].bloch.z, b.z, 1e-14);
    EXPECT_NEAR(stats.points[i].norm_sq, pts[i].norm_sq, 1e-15);
  }
}

TEST(Ensemble, AverageOfTrajectories) {
  const auto jcm = short_gate();
  const auto noise = strong_noise(21);  // not a multiple of the lane width
  const auto initial = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  EngineOptions o;
  o.first_stream = 100;
  const auto stats = run_ensemble(initial, jcm, noise, 250, o);
  const auto ref = reference_trajectory(initial, jcm, 250);
  const auto op = build_step_operator(jcm);
  std::vector<double> f(stats.points.size(), 0.0), z(stats.points.size(), 0.0);
  std::vector<double> ee(stats.points.size(), 0.0), gg(stats.points.size(), 0.0);
  for (int m = 0; m < 21; ++m) {
    const auto pts = run_trajectory(initial, op, generate_path(jcm.steps, noise, 100 + m), ref, 250);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      f[i] += pts[i].fidelity / 21.0;
      ee[i] += pts[i].atom_density(0, 0).real() / 21.0;
      gg[i] += pts[i].atom_density(1, 1).real() / 21.0;
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(stats.points[i].fidelity, f[i], 1e-13);
    EXPECT_NEAR(stats.points[i].bloch.z, (ee[i] - gg[i]) / (ee[i] + gg[i]), 1e-13);
  }
}

TEST(Ensemble, ThreadCountDoesNotChangeBits) {
  const auto jcm = short_gate();
  const auto noise = strong_noise(300);
  const auto one = run_ensemble(InitialPreset::equal_superposition_g012, jcm, noise, 100, threads(1));
  for (int t : {2, 3, 8}) {
    expect_bit_identical(one, run_ensemble(InitialPreset::equal_superposition_g012, jcm, noise, 100, threads(t)));
  }
}

TEST(Ensemble, UnorderedMergeAgreesToRounding) {
  const auto jcm = short_gate();
  const auto noise = strong_noise(300);
  const auto a = run_ensemble(InitialPreset::bare_g1, jcm, noise, 500, threads(1));
  const auto b = run_ensemble(InitialPreset::bare_g1, jcm, noise, 500, threads(4, false));
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_NEAR(a.points[i].fidelity, b.points[i].fidelity, 1e-13);
    EXPECT_NEAR(a.points[i].bloch.z, b.points[i].bloch.z, 1e-13);
  }
}

TEST(Ensemble, StreamPermutationInvariance) {
  const auto jcm = short_gate();
  const auto noise = strong_noise(100);
  EngineOptions forward, reversed;
  for (std::uint64_t m = 0; m < 100; ++m) forward.stream_ids.push_back(m);
  reversed.stream_ids = forward.stream_ids;
  std::reverse(reversed.stream_ids.begin(), reversed.stream_ids.end());
  const auto a = run_ensemble(InitialPreset::equal_superposition_g012, jcm, noise, 200, forward);
  const auto b = run_ensemble(InitialPreset::equal_superposition_g012, jcm, noise, 200, reversed);
  const auto c = run_ensemble(InitialPreset::equal_superposition_g012, jcm, noise, 200);
  expect_bit_identical(a, c);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_NEAR(a.points[i].fidelity, b.points[i].fidelity, 1e-13);
    EXPECT_NEAR(a.points[i].bloch.x, b.points[i].bloch.x, 1e-13);
    EXPECT_NEAR(a.points[i].bloch.z, b.points[i].bloch.z, 1e-13);
  }
  EngineOptions wrong;
  wrong.stream_ids = {1, 2, 3};
  EXPECT_THROW(run_ensemble(InitialPreset::bare_g1, jcm, noise, 200, wrong), std::invalid_argument);
}

TEST(Ensemble, RepeatedRunIsDeterministic) {
  const auto noise = strong_noise(1);
  expect_bit_identical(run_ensemble(InitialPreset::bare_g1, short_gate(), noise, 100),
                       run_ensemble(InitialPreset::bare_g1, short_gate(), noise, 100));
}

TEST(Ensemble, ValidatesParameters) {
  auto noise = strong_noise(10);
  noise.p = 0.6;
  EXPECT_THROW(run_ensemble(InitialPreset::bare_g1, short_gate(), noise, 100), std::invalid_argument);
  EXPECT_THROW(run_ensemble(StateVector(4), short_gate(), strong_noise(10), 100), std::invalid_argument);
}

TEST(Ensemble, BothDecayChannels) {
  const auto jcm = short_gate();
  const auto initial = make_initial_state(InitialPreset::equal_superposition_g012, 5);
  const auto stats = run_ensemble(initial, jcm, strong_noise(400), jcm.steps);
  const auto clean = noiseless_bloch(initial, jcm, jcm.steps).back();
  EXPECT_GT(stats.final_point().bloch.z, clean.z);
  EXPECT_LT(stats.final_point().bloch.squared_length(), clean.squared_length());
}

TEST(Convergence, DisjointStreamsAndErrorScaling) {
  const auto jcm = short_gate(500);
  const std::vector<std::int64_t> counts{500, 2000};
  const auto rows = convergence_study(make_initial_state(InitialPreset::bare_g1, 5), jcm, strong_noise(1, 0.2, 8000.0),
                                      counts);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].first_stream, 0u);
  EXPECT_EQ(rows[1].first_stream, 500u);
  EXPECT_EQ(rows[1].samples, 2000);
  const double ratio = rows[0].final_point.stderr_fidelity / rows[1].final_point.stderr_fidelity;
  EXPECT_NEAR(ratio, 2.0, 0.4);
  std::vector<std::int64_t> none;
  EXPECT_THROW(convergence_study(StateVector(5), jcm, strong_noise(1), none), std::invalid_argument);
}

TEST(Sweep, EdgesAndMonotoneDamage) {
  const auto jcm = short_gate(1000);
  const std::vector<double> ps{0.0, 0.1, 0.3};
  const std::vector<double> des{0.0, 2000.0, 4000.0, 8000.0};
  const auto grid = sweep_fidelity_surface(make_initial_state(InitialPreset::equal_superposition_g012, 5), ps, des,
                                           jcm, strong_noise(200));
  ASSERT_EQ(grid.size(), 12u);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < des.size(); ++j) {
      const auto& v = grid[i * des.size() + j];
      EXPECT_EQ(v.p, ps[i]);
      EXPECT_EQ(v.delta_e, des[j]);
      if (ps[i] == 0.0 || des[j] == 0.0) EXPECT_NEAR(v.fidelity, 1.0, 1e-12);
      if (j > 0 && ps[i] > 0.0) EXPECT_LT(v.fidelity, grid[i * des.size() + j - 1].fidelity);
    }
  }
  const std::vector<double> bad{0.6};
  EXPECT_THROW(sweep_fidelity_surface(StateVector(5), bad, des, jcm, strong_noise(1)), std::invalid_argument);
}

}  // namespace
