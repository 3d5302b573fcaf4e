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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "noisebound/error.hpp"
#include "noisebound/sde.hpp"

namespace noisebound {
namespace {

constexpr double kPi = std::numbers::pi;

NoiseChannel channel(std::string_view pauli_text, double gamma) {
  return NoiseChannel::scaled(pauli_string(pauli_text), ScalarSchedule::constant(gamma));
}

TEST(Stepper, Names) {
  EXPECT_EQ(parse_stepper("em"), StepperKind::kEulerMaruyama);
  EXPECT_EQ(parse_stepper("unitary"), StepperKind::kUnitaryExponential);
  EXPECT_EQ(to_string(StepperKind::kEulerMaruyama), "em");
  EXPECT_THROW(parse_stepper("rk4"), DomainError);
}

TEST(TimeGrid, SnapsToHorizon) {
  const double T = kPi / 2.0;
  auto g = make_grid(T, T / 2000.0);
  EXPECT_EQ(g.steps, 2000);
  EXPECT_EQ(g.time(g.steps), T);
  auto g2 = make_grid(1.0, 0.3);
  EXPECT_EQ(g2.steps, 4);
  EXPECT_DOUBLE_EQ(g2.dt, 0.25);
  EXPECT_EQ(g.nearest_index(T / 10.0), 200);
  EXPECT_THROW(g.nearest_index(2.0 * T), DomainError);
  EXPECT_THROW(make_grid(0.0, 0.1), DomainError);
  EXPECT_THROW(make_grid(1.0, 0.0), DomainError);
}

TEST(NoiseValidation, PauliStringsPass) {
  for (auto text : {"X", "Y", "Z", "X@I", "I@X", "X@X", "Z@Y"}) {
    auto c = validate_noise(channel(text, 0.7), 1.0, 11);
    EXPECT_TRUE(c.ok) << text;
    EXPECT_LT(c.worst_deviation, 1e-14);
  }
  auto profiled = NoiseChannel::scaled(pauli(Pauli::X), ScalarSchedule::sampled({0.0, 1.0}, {0.2, 1.0}));
  EXPECT_TRUE(validate_noise(profiled, 1.0, 101).ok);
}

TEST(NoiseValidation, CollectiveNoiseRejected) {
  // gamma (X (x) I + I (x) X): B^2 = gamma^2 (2 I + 2 X (x) X).
  const double gamma = 0.5;
  OperatorSchedule b = OperatorSchedule::scaled(pauli_string("X@I") + pauli_string("I@X"),
                                                ScalarSchedule::constant(gamma));
  NoiseChannel collective{b, ScalarSchedule::constant(gamma)};
  auto c = validate_noise(collective, 1.0, 5);
  EXPECT_FALSE(c.ok);
  EXPECT_NEAR(c.worst_deviation, 2.0 * gamma * gamma, 1e-14);
  std::vector<NoiseChannel> v{collective};
  try {
    require_valid_noise(v, 1.0, 5);
    FAIL() << "expected NoiseConditionError";
  } catch (const NoiseConditionError& e) {
    EXPECT_NEAR(e.worst_deviation(), 0.5, 1e-14);
    EXPECT_EQ(e.worst_time(), 0.0);
  }
}

TEST(NoiseValidation, ReportsWorstTime) {
  // Strength mismatch only for t >= 0.5.
  OperatorSchedule b = OperatorSchedule::scaled(pauli(Pauli::Z), ScalarSchedule::constant(1.0));
  NoiseChannel c{b, ScalarSchedule::piecewise({0.0, 0.5, 1.0}, {1.0, 0.5})};
  auto r = validate_noise(c, 1.0, 11);
  EXPECT_FALSE(r.ok);
  EXPECT_NEAR(r.worst_deviation, 0.75, 1e-14);
  EXPECT_NEAR(r.worst_time, 0.5, 1e-14);
}

TEST(IdealPropagate, QubitFlipAndSwap) {
  auto flip = ideal_propagate(OperatorSchedule::constant(pauli(Pauli::Y)),
                              StateVector::from_label("1"), kPi / 2.0, 1e-3);
  EXPECT_GE(fidelity(flip, StateVector::from_label("0")), 1.0 - 1e-12);

  auto swap = -0.5 * (pauli_string("X@X") + pauli_string("Y@Y") + pauli_string("Z@Z"));
  auto out = ideal_propagate(OperatorSchedule::constant(swap), StateVector::from_label("+0"),
                             kPi / 2.0, 1e-3);
  EXPECT_GE(fidelity(out, StateVector::from_label("0+")), 1.0 - 1e-12);

  auto same = ideal_propagate(OperatorSchedule::constant(pauli(Pauli::Y)),
                              StateVector::from_label("1"), 0.0, 1e-3);
  EXPECT_EQ(fidelity(same, StateVector::from_label("1")), 1.0);
}

TEST(IdealPropagate, TimeDependentMatchesPiecewiseExact) {
  // H(t) = c(t) Y with c piecewise constant; the rotation angle is the integral of c.
  auto h = OperatorSchedule::scaled(pauli(Pauli::Y), ScalarSchedule::piecewise({0.0, 0.5, 1.0}, {1.0, 2.0}));
  auto out = ideal_propagate(h, StateVector::from_label("0"), 1.0, 1e-3);
  // exp(-i theta Y)|0> = cos theta |0> + sin theta |1>, theta = 1.5
  EXPECT_NEAR(out[1].real() / out[0].real(), std::tan(1.5), 1e-9);
  EXPECT_NEAR(fidelity(out, StateVector::normalized(
                                (CVector(2) << std::cos(1.5), std::sin(1.5)).finished())),
              1.0, 1e-12);
}

TEST(NoisyStep, ZeroNoiseMatchesExactPropagator) {
  auto h = pauli(Pauli::Y);
  std::vector<NoiseTerm> none;
  CVector s = StateVector::from_label("1").amplitudes();
  CVector out = noisy_step(s, h, none, 0.1, {}, StepperKind::kUnitaryExponential);
  CVector expected = expm_hermitian(h, -kI * 0.1) * s;
  EXPECT_LT((out - expected).norm(), 1e-14);
}

TEST(NoisyStep, EulerMaruyamaFormula) {
  auto h = pauli(Pauli::Y);
  std::vector<NoiseTerm> ch{{0.5 * pauli(Pauli::X), 0.5}};
  CVector s = StateVector::from_label("1").amplitudes();
  const double dt = 0.01, dw = 0.03;
  std::vector<double> dws{dw};
  CVector out = noisy_step(s, h, ch, dt, dws, StepperKind::kEulerMaruyama);
  CVector expected = s - kI * (h.matrix() * dt + 0.5 * pauli(Pauli::X).matrix() * dw) * s -
                     0.5 * 0.25 * dt * s;
  EXPECT_LT((out - expected).norm(), 1e-15);
  std::vector<double> wrong{dw, dw};
  EXPECT_THROW(noisy_step(s, h, ch, dt, wrong, StepperKind::kEulerMaruyama), DomainError);
}

TEST(Trajectory, NormConservedPathwise) {
  auto h = OperatorSchedule::scaled(-0.5 * (pauli_string("X@X") + pauli_string("Y@Y") + pauli_string("Z@Z")),
                                    ScalarSchedule::constant(1.0));
  std::vector<NoiseChannel> ch{channel("X@I", 1.5), channel("I@X", 1.5)};
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto traj = simulate_trajectory(h, ch, StateVector::from_label("+0"), kPi / 2.0, kPi / 4000.0,
                                    seed, StepperKind::kUnitaryExponential);
    double drift = 0.0;
    for (const auto& s : traj.states) drift = std::max(drift, std::abs(s.norm() - 1.0));
    EXPECT_LE(drift, 1e-8);
    EXPECT_EQ(traj.states.size(), traj.times.size());
    EXPECT_EQ(traj.increments.size() + 1, traj.states.size());
  }
}

TEST(Trajectory, IncrementsHaveVarianceDt) {
  std::vector<NoiseChannel> ch{channel("X", 0.3)};
  auto traj = simulate_trajectory(OperatorSchedule::constant(pauli(Pauli::Y)), ch,
                                  StateVector::from_label("1"), 100.0, 0.01, 99,
                                  StepperKind::kUnitaryExponential);
  double sum = 0.0, sq = 0.0;
  for (const auto& inc : traj.increments) {
    sum += inc[0];
    sq += inc[0] * inc[0];
  }
  const double n = static_cast<double>(traj.increments.size());
  EXPECT_NEAR(sum / n, 0.0, 4.0 * std::sqrt(0.01 / n));
  // Var of a chi-square estimator: 2 dt^2 / n.
  EXPECT_NEAR(sq / n, 0.01, 4.0 * 0.01 * std::sqrt(2.0 / n));
}

TEST(Trajectory, Reproducible) {
  std::vector<NoiseChannel> ch{channel("X", 0.8)};
  auto h = OperatorSchedule::constant(pauli(Pauli::Y));
  auto s0 = StateVector::from_label("1");
  auto a = simulate_trajectory(h, ch, s0, 1.0, 1e-3, 5, StepperKind::kUnitaryExponential, 3);
  auto b = simulate_trajectory(h, ch, s0, 1.0, 1e-3, 5, StepperKind::kUnitaryExponential, 3);
  auto c = simulate_trajectory(h, ch, s0, 1.0, 1e-3, 5, StepperKind::kUnitaryExponential, 4);
  EXPECT_EQ(a.states.back(), b.states.back());
  EXPECT_NE(a.states.back(), c.states.back());
}

TEST(Trajectory, ReplayedIncrementsReproduceStates) {
  std::vector<NoiseChannel> ch{channel("X", 0.8)};
  auto h = OperatorSchedule::constant(pauli(Pauli::Y));
  auto traj = simulate_trajectory(h, ch, StateVector::from_label("1"), 0.5, 1e-2, 17,
                                  StepperKind::kEulerMaruyama);
  std::vector<NoiseTerm> terms{{0.8 * pauli(Pauli::X), 0.8}};
  CVector s = traj.states.front();
  for (std::size_t k = 0; k < traj.increments.size(); ++k) {
    s = noisy_step(s, pauli(Pauli::Y), terms, 1e-2, traj.increments[k], StepperKind::kEulerMaruyama);
  }
  EXPECT_LT((s - traj.states.back()).norm(), 1e-13);
}

TEST(Integrator, RejectsInvalidSetups) {
  auto h = OperatorSchedule::constant(pauli(Pauli::Y));
  std::vector<NoiseChannel> wrong_dim{channel("X@X", 0.5)};
  EXPECT_THROW(TrajectoryIntegrator(h, wrong_dim, 1.0, 0.01, StepperKind::kUnitaryExponential),
               DimensionError);
  NoiseChannel bad{OperatorSchedule::constant(pauli(Pauli::X)), ScalarSchedule::constant(0.5)};
  std::vector<NoiseChannel> mismatch{bad};
  EXPECT_THROW(TrajectoryIntegrator(h, mismatch, 1.0, 0.01, StepperKind::kUnitaryExponential),
               NoiseConditionError);
  auto short_h = OperatorSchedule::scaled(pauli(Pauli::Y), ScalarSchedule::sampled({0.0, 0.5}, {1.0, 1.0}));
  EXPECT_THROW(TrajectoryIntegrator(short_h, {}, 1.0, 0.01, StepperKind::kUnitaryExponential),
               DomainError);
}

}  // namespace
}  // namespace noisebound
