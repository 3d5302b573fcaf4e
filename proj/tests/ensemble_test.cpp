// Copyright 2026 The noisebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "noisebound/ensemble.hpp"
#include "noisebound/error.hpp"

namespace noisebound {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kT = kPi / 2.0;

struct Setup {
  OperatorSchedule h;
  StateVector s0;
  std::vector<NoiseChannel> channels;
};

NoiseChannel channel(std::string_view text, double gamma) {
  return NoiseChannel::scaled(pauli_string(text), ScalarSchedule::constant(gamma));
}

Setup qubit(std::vector<NoiseChannel> channels) {
  return {OperatorSchedule::constant(pauli(Pauli::Y)), StateVector::from_label("1"),
          std::move(channels)};
}

Setup swap_pair(std::vector<NoiseChannel> channels) {
  auto swap = -0.5 * (pauli_string("X@X") + pauli_string("Y@Y") + pauli_string("Z@Z"));
  return {OperatorSchedule::constant(swap), StateVector::from_label("+0"), std::move(channels)};
}

EnsembleStats run(const Setup& s, int n, double dt = 0.0,
                  StepperKind stepper = StepperKind::kUnitaryExponential, int workers = 1,
                  std::uint64_t seed = kDefaultSeed) {
  EnsembleConfig cfg;
  cfg.n_traj = n;
  cfg.dt = dt;
  cfg.stepper = stepper;
  cfg.workers = workers;
  cfg.master_seed = seed;
  return run_ensemble(s.h, s.channels, s.s0, kT, cfg);
}

void expect_identical(const EnsembleStats& a, const EnsembleStats& b) {
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    const Snapshot& x = a.snapshots[i];
    const Snapshot& y = b.snapshots[i];
    EXPECT_EQ(x.fidelity.mean, y.fidelity.mean);
    EXPECT_EQ(x.fidelity.std_error, y.fidelity.std_error);
    EXPECT_EQ(x.re_overlap.mean, y.re_overlap.mean);
    EXPECT_EQ(x.re_overlap.std_error, y.re_overlap.std_error);
    EXPECT_EQ(x.bures_angle.mean, y.bures_angle.mean);
    EXPECT_TRUE(x.mean_raw_state == y.mean_raw_state);
  }
}

TEST(Ensemble, DefaultGridAndShape) {
  auto stats = run(qubit({channel("X", 0.5)}), 64);
  EXPECT_EQ(stats.steps, kDefaultStepsPerHorizon);
  EXPECT_DOUBLE_EQ(stats.dt, kT / 2000.0);
  ASSERT_EQ(stats.snapshots.size(), 11u);
  EXPECT_EQ(stats.snapshots.front().t, 0.0);
  EXPECT_EQ(stats.snapshots.back().t, kT);
  EXPECT_EQ(stats.snapshots[3].step, 600);
  // t = 0: every trajectory equals the ideal state.
  EXPECT_NEAR(stats.snapshots.front().fidelity.mean, 1.0, 1e-15);
  EXPECT_EQ(stats.snapshots.front().fidelity.std_error, 0.0);
  EXPECT_EQ(stats.n_traj, 64);
}

TEST(Ensemble, NoiselessIsExact) {
  auto stats = run(swap_pair({}), 3);
  for (const auto& s : stats.snapshots) {
    EXPECT_NEAR(s.fidelity.mean, 1.0, 1e-12);
    EXPECT_LE(s.fidelity.std_error, 1e-12);
    EXPECT_NEAR(s.re_overlap.mean, 1.0, 1e-12);
  }
  EXPECT_TRUE(check_bound(stats, std::span<const NoiseChannel>{}, 3.0).passed);
}

TEST(Ensemble, DeterministicAcrossWorkerCounts) {
  auto setup = qubit({channel("X", 0.9), channel("Z", 0.4)});
  auto one = run(setup, 700, kT / 300.0, StepperKind::kUnitaryExponential, 1);
  auto three = run(setup, 700, kT / 300.0, StepperKind::kUnitaryExponential, 3);
  auto eight = run(setup, 700, kT / 300.0, StepperKind::kUnitaryExponential, 8);
  expect_identical(one, three);
  expect_identical(one, eight);
  auto other = run(setup, 700, kT / 300.0, StepperKind::kUnitaryExponential, 1, 1234);
  EXPECT_NE(one.final_snapshot().fidelity.mean, other.final_snapshot().fidelity.mean);
}

TEST(Ensemble, PrefixOfLargerEnsembleUsesSameTrajectories) {
  // Trajectory k is stream k, so the first 128-block is shared.
  auto setup = qubit({channel("X", 0.7)});
  auto a = run(setup, 128, kT / 200.0);
  auto b = run(setup, 256, kT / 200.0);
  EXPECT_NE(a.final_snapshot().fidelity.mean, b.final_snapshot().fidelity.mean);
  auto c = run(setup, 128, kT / 200.0, StepperKind::kUnitaryExponential, 4);
  expect_identical(a, c);
}

TEST(Ensemble, StandardErrorScalesAsInverseRootN) {
  auto setup = qubit({channel("X", 1.0)});
  auto small = run(setup, 1000, kT / 400.0);
  auto large = run(setup, 4000, kT / 400.0);
  const double ratio =
      small.final_snapshot().fidelity.std_error / large.final_snapshot().fidelity.std_error;
  EXPECT_NEAR(ratio, 2.0, 0.4);
}

TEST(Ensemble, BoundAndOverlapOracle) {
  for (double g : {0.3, 1.0}) {
    auto setup = qubit({channel("X", g), channel("Z", g)});
    auto stats = run(setup, 2000);
    auto bound = check_bound(stats, setup.channels, 3.0);
    EXPECT_TRUE(bound.passed) << g;
    auto overlap = check_overlap_decay(stats, setup.channels, 3.0);
    EXPECT_TRUE(overlap.passed) << g;
    EXPECT_NEAR(overlap.points.back().expected, std::exp(-g * g * kT), 1e-15);
    EXPECT_EQ(bound.points.size(), stats.snapshots.size());
  }
}

TEST(Ensemble, OverlapAtHalfGamma) {
  auto setup = qubit({channel("X", 0.5)});
  auto stats = run(setup, 4000);
  const auto& fin = stats.final_snapshot();
  EXPECT_NEAR(fin.re_overlap.mean, std::exp(-kPi / 16.0), 3.0 * fin.re_overlap.std_error);
  EXPECT_GE(fin.fidelity.mean + 3.0 * fin.fidelity.std_error, std::exp(-kPi / 8.0));
  EXPECT_GE(fin.fidelity.mean, std::exp(-0.09 * kPi));
}

TEST(Ensemble, GlobalSwapNoiseClosedForm) {
  // X (x) X commutes with the SWAP Hamiltonian and <+0|XX|+0> = 0, so
  // F = cos^2(gamma W_T) and E[F] = (1 + exp(-2 gamma^2 T)) / 2.
  for (double g : {0.5, 1.0}) {
    auto setup = swap_pair({channel("X@X", g)});
    auto stats = run(setup, 2000);
    const auto& fin = stats.final_snapshot();
    const double expected = 0.5 * (1.0 + std::exp(-g * g * kPi));
    EXPECT_NEAR(fin.fidelity.mean, expected, 3.0 * fin.fidelity.std_error + 1e-4) << g;
  }
}

TEST(Ensemble, ExpectationStateEulerMaruyama) {
  auto setup = qubit({channel("X", 0.5)});
  auto stats = run(setup, 4000, kT / 4000.0, StepperKind::kEulerMaruyama);
  auto ideal = ideal_propagate(setup.h, setup.s0, kT, kT / 4000.0);
  auto report = check_expectation_state(stats, ideal, setup.channels, 3.0);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.points.size(), 4u);
  auto unitary = run(setup, 16, kT / 100.0);
  EXPECT_THROW(check_expectation_state(unitary, ideal, setup.channels, 3.0), DomainError);
}

TEST(Ensemble, JensenChain) {
  auto setup = swap_pair({channel("X@I", 1.0), channel("I@X", 1.0)});
  auto stats = run(setup, 1000);
  EXPECT_TRUE(check_jensen_chain(stats, 3.0).passed);
}

TEST(Ensemble, CorruptedStatisticsFailChecks) {
  auto setup = qubit({channel("X", 0.5)});
  auto stats = run(setup, 500);
  ASSERT_TRUE(check_overlap_decay(stats, setup.channels, 3.0).passed);
  auto bad = stats;
  bad.snapshots.back().re_overlap.mean += 10.0 * bad.snapshots.back().re_overlap.std_error + 0.01;
  EXPECT_FALSE(check_overlap_decay(bad, setup.channels, 3.0).passed);
  auto low = stats;
  low.snapshots.back().fidelity.mean = 0.5 * std::exp(-kPi / 8.0);
  EXPECT_FALSE(check_bound(low, setup.channels, 3.0).passed);
  auto broken = stats;
  broken.snapshots.back().re_overlap.mean = broken.snapshots.back().abs_overlap.mean + 0.1;
  EXPECT_FALSE(check_jensen_chain(broken, 3.0).passed);
}

TEST(Ensemble, StepperAgreementAtSmallDt) {
  auto setup = qubit({channel("X", 0.5)});
  auto em = run(setup, 200, 1e-4, StepperKind::kEulerMaruyama);
  auto ue = run(setup, 200, 1e-4, StepperKind::kUnitaryExponential);
  EXPECT_NEAR(em.final_snapshot().fidelity.mean, ue.final_snapshot().fidelity.mean, 1e-3);
}

TEST(Ensemble, StepperDiscrepancyShrinksWithDt) {
  auto setup = qubit({channel("X", 0.8)});
  double prev = 1.0;
  for (int steps : {250, 1000, 4000}) {
    auto em = run(setup, 200, kT / steps, StepperKind::kEulerMaruyama);
    auto ue = run(setup, 200, kT / steps, StepperKind::kUnitaryExponential);
    const double gap =
        std::abs(em.final_snapshot().fidelity.mean - ue.final_snapshot().fidelity.mean);
    EXPECT_LT(gap, prev) << steps;
    prev = gap;
  }
}

TEST(Ensemble, EulerMaruyamaIsNotRenormalized) {
  auto setup = qubit({channel("X", 1.0)});
  auto stats = run(setup, 64, kT / 50.0, StepperKind::kEulerMaruyama);
  // Raw states drift in norm, so Re<psi|phi> need not stay in [-1, 1] per path
  // but the normalized fidelity does.
  for (const auto& s : stats.snapshots) {
    EXPECT_LE(s.fidelity.mean, 1.0 + 1e-12);
  }
  EXPECT_GT(stats.final_snapshot().mean_raw_state.norm(), 0.0);
}

TEST(Ensemble, CustomRecordGrid) {
  auto setup = qubit({channel("X", 0.5)});
  EnsembleConfig cfg;
  cfg.n_traj = 10;
  cfg.dt = kT / 100.0;
  cfg.record_grid = {0.0, kT / 3.0, kT};
  cfg.workers = 1;
  auto stats = run_ensemble(setup.h, setup.channels, setup.s0, kT, cfg);
  ASSERT_EQ(stats.snapshots.size(), 3u);
  EXPECT_EQ(stats.snapshots[1].step, 33);
  cfg.record_grid = {2.0 * kT};
  EXPECT_THROW(run_ensemble(setup.h, setup.channels, setup.s0, kT, cfg), DomainError);
  cfg.record_grid.clear();
  cfg.n_traj = 0;
  EXPECT_THROW(run_ensemble(setup.h, setup.channels, setup.s0, kT, cfg), DomainError);
}

}  // namespace
}  // namespace noisebound
