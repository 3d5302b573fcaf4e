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

#ifndef NOISEBOUND_ENSEMBLE_HPP_
#define NOISEBOUND_ENSEMBLE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noisebound/bounds.hpp"
#include "noisebound/qcore.hpp"
#include "noisebound/schedule.hpp"
#include "noisebound/sde.hpp"

namespace noisebound {

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr int kDefaultStepsPerHorizon = 2000;

struct EnsembleConfig {
  int n_traj = 10000;
  // Requested step size; <= 0 selects T / kDefaultStepsPerHorizon.
  double dt = 0.0;
  std::uint64_t master_seed = kDefaultSeed;
  StepperKind stepper = StepperKind::kUnitaryExponential;
  // Snapshot times in [0, T], snapped to the nearest step; empty selects
  // default_record_grid(T).
  std::vector<double> record_grid;
  // Worker threads; <= 0 uses std::thread::hardware_concurrency(). Results do
  // not depend on this value.
  int workers = 0;
};

// {0, T/n, ..., T}: the final time plus n - 1 intermediate points and t = 0.
std::vector<double> default_record_grid(double horizon, int intervals = 10);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
};

struct Snapshot {
  double t = 0.0;
  int step = 0;
  CVector ideal_state;       // |psi(t)>
  Estimate fidelity;         // |<psi(t)|phi(t)>|^2, phi normalized
  Estimate re_overlap;       // Re <psi(t)|phi(t)>, phi as produced by the stepper
  Estimate abs_overlap;      // |<psi(t)|phi(t)>|, phi normalized
  Estimate bures_angle;      // arccos |<psi_0|phi(t)>|, phi normalized
  CVector mean_raw_state;    // componentwise average of the raw phi(t)
  Eigen::VectorXd raw_std_error_real;
  Eigen::VectorXd raw_std_error_imag;
};

struct EnsembleStats {
  StepperKind stepper = StepperKind::kUnitaryExponential;
  int n_traj = 0;
  int steps = 0;
  double dt = 0.0;
  double horizon = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<Snapshot> snapshots;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

// Runs cfg.n_traj trajectories (trajectory k draws from GaussianStream(seed, k))
// and aggregates per-snapshot moments. Aggregation happens in fixed blocks of
// trajectory indices merged in index order, so the output is bitwise
// identical for any worker count.
EnsembleStats run_ensemble(const OperatorSchedule& h, const std::vector<NoiseChannel>& channels,
                           const StateVector& s0, double horizon, const EnsembleConfig& cfg);

struct CheckPoint {
  double t = 0.0;
  double observed = 0.0;
  double expected = 0.0;
  double std_error = 0.0;
  bool pass = true;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<CheckPoint> points;
};

// Absolute slack added to every statistical comparison, covering rounding
// where the standard error vanishes (t = 0, noiseless runs).
inline constexpr double kCheckSlack = 1e-12;

// |E[Re <psi|phi>] - exp(-1/2 sum_j int_0^t gamma_j^2)| <= sigmas * stderr.
CheckReport check_overlap_decay(const EnsembleStats& stats, std::span<const NoiseChannel> channels,
                                double tolerance_sigmas, double slack = kCheckSlack);

// E[F] + sigmas * stderr >= F* at every snapshot; `reports` must match the
// snapshot times.
CheckReport check_bound(const EnsembleStats& stats, std::span<const BoundReport> reports,
                        double tolerance_sigmas, double slack = kCheckSlack);
CheckReport check_bound(const EnsembleStats& stats, std::span<const NoiseChannel> channels,
                        double tolerance_sigmas, double slack = kCheckSlack);

// E[|phi(T)>] = exp(-1/2 sum_j int_0^T gamma_j^2) |psi(T)>, real and imaginary
// parts of each component separately. Requires Euler-Maruyama statistics.
CheckReport check_expectation_state(const EnsembleStats& stats, const StateVector& ideal_final,
                                    std::span<const NoiseChannel> channels,
                                    double tolerance_sigmas, double slack = kCheckSlack);

// E[Re <psi|phi>] <= E[|<psi|phi>|] <= sqrt(E[F]) at every snapshot, each
// inequality allowed to fail by sigmas times the larger standard error.
CheckReport check_jensen_chain(const EnsembleStats& stats, double tolerance_sigmas,
                               double slack = kCheckSlack);

}  // namespace noisebound

#endif  // NOISEBOUND_ENSEMBLE_HPP_
