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

#ifndef NOISEBOUND_SDE_HPP_
#define NOISEBOUND_SDE_HPP_

// Ideal and stochastic Schroedinger propagation.
//
// The noisy state obeys the Ito equation
//   d|phi> = -(i H dt + sum_j gamma_j^2/2 dt + i sum_j B_j dW_j) |phi>
// with independent Wiener processes W_j per channel. Time-dependent
// schedules are evaluated at the left endpoint of each step.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noisebound/qcore.hpp"
#include "noisebound/schedule.hpp"

namespace noisebound {

enum class StepperKind {
  // |phi> <- exp(-i (H dt + sum_j B_j dW_j)) |phi>; norm preserving.
  kUnitaryExponential,
  // Raw Ito update, never renormalized.
  kEulerMaruyama,
};

std::string_view to_string(StepperKind kind);
// Accepts "unitary", "unitary-exponential", "em", "euler-maruyama".
StepperKind parse_stepper(std::string_view text);

// Uniform grid on [0, T] whose step is the largest value <= the requested dt
// that divides T exactly.
struct TimeGrid {
  double horizon = 0.0;
  int steps = 0;
  double dt = 0.0;

  double time(int k) const { return k >= steps ? horizon : k * dt; }
  // Index of the grid point nearest to t; throws if t is outside [0, T].
  int nearest_index(double t) const;
};

TimeGrid make_grid(double horizon, double dt);

// Tolerance of the local-noise condition check.
inline constexpr double kNoiseConditionTol = 1e-8;

struct NoiseCheck {
  bool ok = true;
  double worst_deviation = 0.0;
  double worst_time = 0.0;
};

// Checks max|B(t)^2 - gamma(t)^2 I| <= kNoiseConditionTol and gamma(t) >= 0 at
// n_samples uniformly spaced times on [0, horizon] (t = 0 alone when
// n_samples = 1).
NoiseCheck validate_noise(const NoiseChannel& channel, double horizon, int n_samples);

// Throws NoiseConditionError with the diagnostic on the first failing channel.
void require_valid_noise(std::span<const NoiseChannel> channels, double horizon, int n_samples);

// Ideal evolution d|psi>/dt = -i H(t) |psi>. Time-independent schedules use a
// single exponential; otherwise one exponential per step of size <= dt.
StateVector ideal_propagate(const OperatorSchedule& h, const StateVector& s0, double horizon,
                            double dt);

// A noise term frozen at one time: B and gamma.
struct NoiseTerm {
  HermitianOperator generator;
  double gamma;
};

// One Ito step with one Wiener increment per channel.
CVector noisy_step(const CVector& s, const HermitianOperator& h, std::span<const NoiseTerm> channels,
                   double dt, std::span<const double> dws, StepperKind kind);

// Precomputed stepping machinery for one (H, channels, grid, stepper) setup;
// shared read-only by all trajectories of an ensemble.
class TrajectoryIntegrator {
 public:
  struct Workspace {
    CMatrix generator;
    ExpWorkspace exp;
    CVector scratch;
  };

  TrajectoryIntegrator(OperatorSchedule h, std::vector<NoiseChannel> channels, double horizon,
                       double dt, StepperKind kind);

  const TimeGrid& grid() const { return grid_; }
  StepperKind kind() const { return kind_; }
  std::size_t channel_count() const { return channels_.size(); }
  Eigen::Index dim() const { return h_.dim(); }
  const OperatorSchedule& hamiltonian() const { return h_; }
  const std::vector<NoiseChannel>& channels() const { return channels_; }

  // Advances `state` from grid point k to k + 1. `dws` holds one increment per
  // channel with variance grid().dt.
  void step(int k, std::span<const double> dws, CVector& state, Workspace& ws) const;

 private:
  OperatorSchedule h_;
  std::vector<NoiseChannel> channels_;
  TimeGrid grid_;
  StepperKind kind_;
  bool constant_ = false;
  CMatrix h_dt_;                     // H dt, when every schedule is constant
  std::vector<CMatrix> generators_;  // B_j, when every schedule is constant
  double half_gamma_sq_dt_ = 0.0;    // sum_j gamma_j^2 dt / 2, constant case
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  // increments[k][j]: Wiener increment of channel j over step k.
  std::vector<std::vector<double>> increments;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Deterministic in (seed, stream): the Wiener increments come from
// GaussianStream(seed, stream), channel-major within each step. An ensemble
// trajectory with index k is reproduced by stream = k.
Trajectory simulate_trajectory(const OperatorSchedule& h, const std::vector<NoiseChannel>& channels,
                               const StateVector& s0, double horizon, double dt,
                               std::uint64_t seed, StepperKind kind, std::uint64_t stream = 0);

}  // namespace noisebound

#endif  // NOISEBOUND_SDE_HPP_
