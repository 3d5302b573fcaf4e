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

#include "noisebound/sde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "noisebound/error.hpp"
#include "noisebound/rng.hpp"

namespace noisebound {

std::string_view to_string(StepperKind kind) {
  switch (kind) {
    case StepperKind::kUnitaryExponential: return "unitary";
    case StepperKind::kEulerMaruyama: return "em";
  }
  return "unknown";
}

StepperKind parse_stepper(std::string_view text) {
  if (text == "unitary" || text == "unitary-exponential") return StepperKind::kUnitaryExponential;
  if (text == "em" || text == "euler-maruyama") return StepperKind::kEulerMaruyama;
  throw DomainError("unknown stepper '" + std::string(text) + "' (expected unitary or em)");
}

int TimeGrid::nearest_index(double t) const {
  if (!(t >= -1e-12 * horizon && t <= horizon * (1.0 + 1e-12))) {
    throw DomainError("time " + std::to_string(t) + " outside [0, " + std::to_string(horizon) + "]");
  }
  return std::clamp(static_cast<int>(std::lround(t / dt)), 0, steps);
}

TimeGrid make_grid(double horizon, double dt) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("time horizon must be positive and finite");
  }
  if (!(dt > 0.0)) {
    throw DomainError("step size must be positive");
  }
  const double ratio = horizon / dt;
  if (ratio > 1e9) throw DomainError("too many time steps requested");
  // Tolerate dt = T / n computed in floating point.
  const int steps = std::max(1, static_cast<int>(std::ceil(ratio * (1.0 - 1e-12))));
  return TimeGrid{horizon, steps, horizon / steps};
}

NoiseCheck validate_noise(const NoiseChannel& channel, double horizon, int n_samples) {
  if (n_samples < 1) throw DomainError("validate_noise: n_samples must be >= 1");
  if (!(horizon >= 0.0)) throw DomainError("validate_noise: negative horizon");
  const Eigen::Index d = channel.generator.dim();
  NoiseCheck check;
  for (int i = 0; i < n_samples; ++i) {
    const double t = n_samples == 1 ? 0.0 : horizon * i / (n_samples - 1);
    if (!channel.generator.covers(t) || !channel.strength.covers(t)) {
      throw DomainError("noise channel schedule does not cover t = " + std::to_string(t));
    }
    const double gamma = channel.strength(t);
    const CMatrix b = channel.generator.at(t).matrix();
    double deviation = (b * b - gamma * gamma * CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (gamma < 0.0) deviation = std::max(deviation, -gamma);
    if (i == 0 || deviation > check.worst_deviation) {
      check.worst_deviation = deviation;
      check.worst_time = t;
    }
  }
  check.ok = check.worst_deviation <= kNoiseConditionTol;
  return check;
}

void require_valid_noise(std::span<const NoiseChannel> channels, double horizon, int n_samples) {
  for (std::size_t j = 0; j < channels.size(); ++j) {
    const NoiseCheck c = validate_noise(channels[j], horizon, n_samples);
    if (!c.ok) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "noise channel " << j << " violates B(t)^2 = gamma(t)^2 I: max deviation "
          << c.worst_deviation << " at t = " << c.worst_time;
      throw NoiseConditionError(msg.str(), c.worst_deviation, c.worst_time);
    }
  }
}

StateVector ideal_propagate(const OperatorSchedule& h, const StateVector& s0, double horizon,
                            double dt) {
  if (h.dim() != s0.dim()) {
    throw DimensionError("ideal_propagate: Hamiltonian and state dimensions differ");
  }
  if (!(dt > 0.0)) throw DomainError("ideal_propagate: dt must be positive");
  if (!(horizon >= 0.0)) throw DomainError("ideal_propagate: negative horizon");
  if (!h.covers(horizon)) {
    throw DomainError("ideal_propagate: Hamiltonian schedule does not cover [0, T]");
  }
  if (horizon == 0.0) return s0;
  if (h.time_independent()) {
    return StateVector::normalized(expm_hermitian(h.at(0.0), -kI * horizon) * s0.amplitudes());
  }
  const TimeGrid grid = make_grid(horizon, dt);
  CVector state = s0.amplitudes();
  for (int k = 0; k < grid.steps; ++k) {
    state = expm_hermitian(h.at(grid.time(k)), -kI * grid.dt) * state;
  }
  return StateVector::normalized(std::move(state));
}

CVector noisy_step(const CVector& s, const HermitianOperator& h, std::span<const NoiseTerm> channels,
                   double dt, std::span<const double> dws, StepperKind kind) {
  if (channels.size() != dws.size()) {
    throw DomainError("noisy_step: " + std::to_string(dws.size()) + " increments for " +
                      std::to_string(channels.size()) + " channels");
  }
  if (s.size() != h.dim()) throw DimensionError("noisy_step: state and Hamiltonian differ in size");
  CMatrix g = h.matrix() * dt;
  double half_gamma_sq = 0.0;
  for (std::size_t j = 0; j < channels.size(); ++j) {
    if (channels[j].generator.dim() != h.dim()) {
      throw DimensionError("noisy_step: noise generator dimension differs from Hamiltonian");
    }
    g += dws[j] * channels[j].generator.matrix();
    half_gamma_sq += 0.5 * channels[j].gamma * channels[j].gamma;
  }
  CVector out = s;
  if (kind == StepperKind::kUnitaryExponential) {
    ExpWorkspace ws;
    apply_unitary_exp(g, out, ws);
  } else {
    out -= kI * (g * s) + (half_gamma_sq * dt) * s;
  }
  return out;
}

TrajectoryIntegrator::TrajectoryIntegrator(OperatorSchedule h, std::vector<NoiseChannel> channels,
                                           double horizon, double dt, StepperKind kind)
    : h_(std::move(h)),
      channels_(std::move(channels)),
      grid_(make_grid(horizon, dt)),
      kind_(kind) {
  if (!h_.covers(horizon)) {
    throw DomainError("Hamiltonian schedule does not cover [0, T]");
  }
  for (const NoiseChannel& c : channels_) {
    if (c.generator.dim() != h_.dim()) {
      throw DimensionError("noise generator dimension differs from the Hamiltonian");
    }
    if (!c.generator.covers(horizon) || !c.strength.covers(horizon)) {
      throw DomainError("noise schedule does not cover [0, T]");
    }
  }
  constant_ = h_.time_independent();
  for (const NoiseChannel& c : channels_) {
    constant_ = constant_ && c.generator.time_independent() &&
                c.strength.kind() == ScalarSchedule::Kind::kConstant;
  }
  // Every point where a schedule is evaluated gets checked.
  require_valid_noise(channels_, grid_.horizon, constant_ ? 1 : grid_.steps + 1);
  if (constant_) {
    h_dt_ = h_.at(0.0).matrix() * grid_.dt;
    for (const NoiseChannel& c : channels_) {
      generators_.push_back(c.generator.at(0.0).matrix());
      half_gamma_sq_dt_ += 0.5 * c.strength(0.0) * c.strength(0.0) * grid_.dt;
    }
  }
}

void TrajectoryIntegrator::step(int k, std::span<const double> dws, CVector& state,
                                Workspace& ws) const {
  double half_gamma_sq_dt = half_gamma_sq_dt_;
  if (constant_) {
    ws.generator = h_dt_;
    for (std::size_t j = 0; j < generators_.size(); ++j) ws.generator += dws[j] * generators_[j];
  } else {
    const double t = grid_.time(k);
    ws.generator.setZero(dim(), dim());
    h_.accumulate(t, grid_.dt, ws.generator);
    half_gamma_sq_dt = 0.0;
    for (std::size_t j = 0; j < channels_.size(); ++j) {
      channels_[j].generator.accumulate(t, dws[j], ws.generator);
      const double gamma = channels_[j].strength(t);
      half_gamma_sq_dt += 0.5 * gamma * gamma * grid_.dt;
    }
  }
  if (kind_ == StepperKind::kUnitaryExponential) {
    apply_unitary_exp(ws.generator, state, ws.exp);
  } else {
    ws.scratch.noalias() = ws.generator * state;
    state *= (1.0 - half_gamma_sq_dt);
    state -= kI * ws.scratch;
  }
}

Trajectory simulate_trajectory(const OperatorSchedule& h, const std::vector<NoiseChannel>& channels,
                               const StateVector& s0, double horizon, double dt,
                               std::uint64_t seed, StepperKind kind, std::uint64_t stream) {
  if (h.dim() != s0.dim()) {
    throw DimensionError("simulate_trajectory: Hamiltonian and state dimensions differ");
  }
  const TrajectoryIntegrator integrator(h, channels, horizon, dt, kind);
  const TimeGrid& grid = integrator.grid();
  GaussianStream rng(seed, stream);
  const double sqrt_dt = std::sqrt(grid.dt);

  Trajectory traj;
  traj.seed = seed;
  traj.stream = stream;
  traj.times.reserve(grid.steps + 1);
  traj.states.reserve(grid.steps + 1);
  traj.increments.reserve(grid.steps);

  CVector state = s0.amplitudes();
  TrajectoryIntegrator::Workspace ws;
  std::vector<double> dws(channels.size());
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  for (int k = 0; k < grid.steps; ++k) {
    for (double& dw : dws) dw = sqrt_dt * rng.next();
    integrator.step(k, dws, state, ws);
    traj.increments.push_back(dws);
    traj.times.push_back(grid.time(k + 1));
    traj.states.push_back(state);
  }
  return traj;
}

}  // namespace noisebound
