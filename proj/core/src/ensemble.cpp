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

#include "noisebound/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "noisebound/error.hpp"
#include "noisebound/rng.hpp"

namespace noisebound {
namespace {

// Trajectories per reduction block. Fixed so the merge tree does not depend
// on the worker count.
constexpr int kBlockSize = 128;

// Streaming mean / sum of squared deviations.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    if (count == 0.0) {
      *this = other;
      return;
    }
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * (other.count / total);
    m2 += other.m2 + delta * delta * (count * other.count / total);
    count = total;
  }

  double std_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }

  Estimate estimate() const { return Estimate{mean, std_error()}; }
};

struct SnapshotMoments {
  Moments fidelity;
  Moments re_overlap;
  Moments abs_overlap;
  Moments bures;
  std::vector<Moments> raw_real;
  std::vector<Moments> raw_imag;

  explicit SnapshotMoments(Eigen::Index dim) : raw_real(dim), raw_imag(dim) {}

  void merge(const SnapshotMoments& o) {
    fidelity.merge(o.fidelity);
    re_overlap.merge(o.re_overlap);
    abs_overlap.merge(o.abs_overlap);
    bures.merge(o.bures);
    for (std::size_t i = 0; i < raw_real.size(); ++i) {
      raw_real[i].merge(o.raw_real[i]);
      raw_imag[i].merge(o.raw_imag[i]);
    }
  }
};

struct Plan {
  std::vector<int> steps;          // snapshot step indices, ascending
  std::vector<CVector> ideal;      // |psi(t)> at those steps
};

Plan make_plan(const OperatorSchedule& h, const StateVector& s0, const TimeGrid& grid,
               const std::vector<double>& record_grid) {
  Plan plan;
  for (double t : record_grid) plan.steps.push_back(grid.nearest_index(t));
  std::sort(plan.steps.begin(), plan.steps.end());
  plan.steps.erase(std::unique(plan.steps.begin(), plan.steps.end()), plan.steps.end());

  if (h.time_independent()) {
    const HermitianOperator h0 = h.at(0.0);
    for (int k : plan.steps) {
      const double t = grid.time(k);
      plan.ideal.push_back(k == 0 ? s0.amplitudes()
                                  : CVector(expm_hermitian(h0, -kI * t) * s0.amplitudes()));
    }
    return plan;
  }
  CVector state = s0.amplitudes();
  int k = 0;
  for (int target : plan.steps) {
    for (; k < target; ++k) state = expm_hermitian(h.at(grid.time(k)), -kI * grid.dt) * state;
    plan.ideal.push_back(state);
  }
  return plan;
}

void run_block(const TrajectoryIntegrator& integrator, const Plan& plan, const CVector& s0,
               std::uint64_t seed, int first, int last, std::vector<SnapshotMoments>& out) {
  const TimeGrid& grid = integrator.grid();
  const double sqrt_dt = std::sqrt(grid.dt);
  const Eigen::Index d = s0.size();
  TrajectoryIntegrator::Workspace ws;
  std::vector<double> dws(integrator.channel_count());
  CVector state(d);

  for (int traj = first; traj < last; ++traj) {
    GaussianStream rng(seed, static_cast<std::uint64_t>(traj));
    state = s0;
    int k = 0;
    for (std::size_t snap = 0; snap < plan.steps.size(); ++snap) {
      for (; k < plan.steps[snap]; ++k) {
        for (double& dw : dws) dw = sqrt_dt * rng.next();
        integrator.step(k, dws, state, ws);
      }
      SnapshotMoments& m = out[snap];
      const double norm = state.norm();
      const Complex overlap = plan.ideal[snap].dot(state);
      const double abs_normalized = std::abs(overlap) / norm;
      m.re_overlap.add(overlap.real());
      m.abs_overlap.add(abs_normalized);
      m.fidelity.add(abs_normalized * abs_normalized);
      m.bures.add(std::acos(std::clamp(std::abs(s0.dot(state)) / norm, 0.0, 1.0)));
      for (Eigen::Index i = 0; i < d; ++i) {
        m.raw_real[i].add(state[i].real());
        m.raw_imag[i].add(state[i].imag());
      }
    }
  }
}

double half_exponent(std::span<const NoiseChannel> channels, double t) {
  double total = 0.0;
  for (const NoiseChannel& c : channels) total += integrate_gamma_squared(c.strength, t);
  return 0.5 * total;
}

}  // namespace

std::vector<double> default_record_grid(double horizon, int intervals) {
  if (intervals < 1) throw DomainError("record grid needs at least one interval");
  std::vector<double> grid;
  for (int i = 0; i <= intervals; ++i) grid.push_back(i == intervals ? horizon : horizon * i / intervals);
  return grid;
}

EnsembleStats run_ensemble(const OperatorSchedule& h, const std::vector<NoiseChannel>& channels,
                           const StateVector& s0, double horizon, const EnsembleConfig& cfg) {
  if (cfg.n_traj < 2) throw DomainError("run_ensemble: n_traj must be at least 2");
  if (h.dim() != s0.dim()) throw DimensionError("run_ensemble: state and Hamiltonian differ in size");
  const double dt = cfg.dt > 0.0 ? cfg.dt : horizon / kDefaultStepsPerHorizon;
  const TrajectoryIntegrator integrator(h, channels, horizon, dt, cfg.stepper);
  const TimeGrid& grid = integrator.grid();
  const std::vector<double> record =
      cfg.record_grid.empty() ? default_record_grid(horizon) : cfg.record_grid;
  const Plan plan = make_plan(h, s0, grid, record);

  const int n_blocks = (cfg.n_traj + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<SnapshotMoments>> blocks(
      n_blocks, std::vector<SnapshotMoments>(plan.steps.size(), SnapshotMoments(s0.dim())));

  std::atomic<int> next_block{0};
  auto worker = [&]() {
    for (int b = next_block++; b < n_blocks; b = next_block++) {
      const int first = b * kBlockSize;
      const int last = std::min(cfg.n_traj, first + kBlockSize);
      run_block(integrator, plan, s0.amplitudes(), cfg.master_seed, first, last, blocks[b]);
    }
  };
  int workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_blocks);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<SnapshotMoments> total(plan.steps.size(), SnapshotMoments(s0.dim()));
  for (const auto& block : blocks) {
    for (std::size_t s = 0; s < total.size(); ++s) total[s].merge(block[s]);
  }

  EnsembleStats stats;
  stats.stepper = cfg.stepper;
  stats.n_traj = cfg.n_traj;
  stats.steps = grid.steps;
  stats.dt = grid.dt;
  stats.horizon = horizon;
  stats.master_seed = cfg.master_seed;
  for (std::size_t s = 0; s < total.size(); ++s) {
    const SnapshotMoments& m = total[s];
    Snapshot snap;
    snap.step = plan.steps[s];
    snap.t = grid.time(snap.step);
    snap.ideal_state = plan.ideal[s];
    snap.fidelity = m.fidelity.estimate();
    snap.re_overlap = m.re_overlap.estimate();
    snap.abs_overlap = m.abs_overlap.estimate();
    snap.bures_angle = m.bures.estimate();
    const Eigen::Index d = s0.dim();
    snap.mean_raw_state.resize(d);
    snap.raw_std_error_real.resize(d);
    snap.raw_std_error_imag.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      snap.mean_raw_state[i] = Complex(m.raw_real[i].mean, m.raw_imag[i].mean);
      snap.raw_std_error_real[i] = m.raw_real[i].std_error();
      snap.raw_std_error_imag[i] = m.raw_imag[i].std_error();
    }
    stats.snapshots.push_back(std::move(snap));
  }
  return stats;
}

CheckReport check_overlap_decay(const EnsembleStats& stats, std::span<const NoiseChannel> channels,
                                double tolerance_sigmas, double slack) {
  CheckReport report{"overlap-decay", true, {}};
  for (const Snapshot& s : stats.snapshots) {
    CheckPoint p;
    p.t = s.t;
    p.observed = s.re_overlap.mean;
    p.expected = std::exp(-half_exponent(channels, s.t));
    p.std_error = s.re_overlap.std_error;
    p.pass = std::abs(p.observed - p.expected) <= tolerance_sigmas * p.std_error + slack;
    report.passed = report.passed && p.pass;
    report.points.push_back(p);
  }
  return report;
}

CheckReport check_bound(const EnsembleStats& stats, std::span<const BoundReport> reports,
                        double tolerance_sigmas, double slack) {
  if (reports.size() != stats.snapshots.size()) {
    throw DomainError("check_bound: bound reports do not match the snapshot grid");
  }
  CheckReport report{"fidelity-bound", true, {}};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const Snapshot& s = stats.snapshots[i];
    if (std::abs(reports[i].t - s.t) > 1e-9 * std::max(1.0, stats.horizon)) {
      throw DomainError("check_bound: bound report time differs from snapshot time");
    }
    CheckPoint p;
    p.t = s.t;
    p.observed = s.fidelity.mean;
    p.expected = reports[i].f_star;
    p.std_error = s.fidelity.std_error;
    p.pass = p.observed + tolerance_sigmas * p.std_error + slack >= p.expected;
    report.passed = report.passed && p.pass;
    report.points.push_back(p);
  }
  return report;
}

CheckReport check_bound(const EnsembleStats& stats, std::span<const NoiseChannel> channels,
                        double tolerance_sigmas, double slack) {
  std::vector<BoundReport> reports;
  for (const Snapshot& s : stats.snapshots) reports.push_back(fidelity_lower_bound(channels, s.t));
  return check_bound(stats, reports, tolerance_sigmas, slack);
}

CheckReport check_expectation_state(const EnsembleStats& stats, const StateVector& ideal_final,
                                    std::span<const NoiseChannel> channels,
                                    double tolerance_sigmas, double slack) {
  if (stats.stepper != StepperKind::kEulerMaruyama) {
    throw DomainError(
        "check_expectation_state: needs raw Euler-Maruyama states; unitary-stepper averages "
        "carry scheme bias");
  }
  const Snapshot& s = stats.final_snapshot();
  if (ideal_final.dim() != s.mean_raw_state.size()) {
    throw DimensionError("check_expectation_state: ideal state dimension mismatch");
  }
  const double scale = std::exp(-half_exponent(channels, s.t));
  CheckReport report{"expectation-state", true, {}};
  for (Eigen::Index i = 0; i < ideal_final.dim(); ++i) {
    const Complex expected = scale * ideal_final[i];
    const CheckPoint re{s.t, s.mean_raw_state[i].real(), expected.real(),
                        s.raw_std_error_real[i], true};
    const CheckPoint im{s.t, s.mean_raw_state[i].imag(), expected.imag(),
                        s.raw_std_error_imag[i], true};
    for (CheckPoint p : {re, im}) {
      p.pass = std::abs(p.observed - p.expected) <= tolerance_sigmas * p.std_error + slack;
      report.passed = report.passed && p.pass;
      report.points.push_back(p);
    }
  }
  return report;
}

CheckReport check_jensen_chain(const EnsembleStats& stats, double tolerance_sigmas, double slack) {
  CheckReport report{"jensen-chain", true, {}};
  for (const Snapshot& s : stats.snapshots) {
    const double root_f = std::sqrt(s.fidelity.mean);
    const double root_f_err = root_f > 0.0 ? s.fidelity.std_error / (2.0 * root_f) : 0.0;

    CheckPoint lower{s.t, s.re_overlap.mean, s.abs_overlap.mean,
                     std::max(s.re_overlap.std_error, s.abs_overlap.std_error), true};
    lower.pass = lower.observed <= lower.expected + tolerance_sigmas * lower.std_error + slack;

    CheckPoint upper{s.t, s.abs_overlap.mean, root_f,
                     std::max(s.abs_overlap.std_error, root_f_err), true};
    upper.pass = upper.observed <= upper.expected + tolerance_sigmas * upper.std_error + slack;

    report.passed = report.passed && lower.pass && upper.pass;
    report.points.push_back(lower);
    report.points.push_back(upper);
  }
  return report;
}

}  // namespace noisebound
