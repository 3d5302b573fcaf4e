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

#ifndef NOISEBOUND_APP_EXPERIMENT_HPP_
#define NOISEBOUND_APP_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisebound/bounds.hpp"
#include "noisebound/ensemble.hpp"
#include "noisebound/error.hpp"
#include "noisebound/qcore.hpp"
#include "noisebound/schedule.hpp"

namespace noisebound::app {

// Process exit codes of the noisebound tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // a bound / overlap / QSL check failed
  kExitUsage = 2,        // bad command line
  kExitParse = 3,        // config file syntax or semantic error
  kExitValidation = 4,   // noise condition, dimension or domain violation
  kExitIo = 5,           // output could not be written
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Sum of c_k P_k over Pauli strings, e.g. {{-0.5, "X@X"}, {-0.5, "Y@Y"}}.
HermitianOperator pauli_sum(const std::vector<std::pair<double, std::string>>& terms);

// One noise channel of a model, before the sweep value is applied:
// B(t) = gamma * profile(t) * unit, strength gamma * profile(t).
struct ChannelTemplate {
  HermitianOperator unit;
  ScalarSchedule profile = ScalarSchedule::constant(1.0);
};

// A set of channels swept together; a model may compare several (fig2a).
struct NoiseSeries {
  std::string label;
  std::vector<ChannelTemplate> channels;
};

struct Model {
  std::string name;
  OperatorSchedule hamiltonian;
  StateVector initial;
  double horizon;
  std::vector<NoiseSeries> series;

  std::vector<NoiseChannel> channels_at(const NoiseSeries& s, double gamma) const;
  // Row label: the model name, suffixed with the series label when present.
  std::string series_name(const NoiseSeries& s) const;
};

enum class PresetName { kFig1a, kFig1b, kFig2a, kFig2b, kQslReport };

std::optional<PresetName> parse_preset_name(std::string_view text);
std::string_view to_string(PresetName name);

// {0.1, 0.2, ..., 1.5}
std::vector<double> default_gamma_grid();

struct ExperimentPreset {
  PresetName name = PresetName::kFig1a;
  std::vector<double> gamma_grid = default_gamma_grid();
  double u = 1.0;
};

// Throws DomainError unless the grid is nonempty, nonnegative and strictly increasing.
void validate_gamma_grid(const std::vector<double>& grid);

// fig1a: H = u S_y, |1> -> |0>, B = gamma S_x.
// fig1b: as fig1a with B1 = gamma S_x, B2 = gamma S_z.
// fig2a: H = -(u/2)(XX + YY + ZZ), |+>|0> -> |0>|+>, series local (X@I) and
//        global (X@X).
// fig2b: as fig2a with B1 = gamma X@I, B2 = gamma I@X.
// qsl-report: the fig1a qubit.
// T = pi / (2u) throughout.
Model build_model(const ExperimentPreset& preset);

struct PresetRow {
  std::string preset;
  double gamma = 0.0;
  BoundReport bound;  // at t = T
  EnsembleStats stats;
  CheckReport bound_check;
  CheckReport overlap_check;
};

struct SweepResult {
  std::vector<PresetRow> rows;
  bool all_passed = true;
  // Crossing of the first two series, when the model has two (fig2a).
  std::optional<double> crossing;
};

inline constexpr double kCheckSigmas = 3.0;

// Runs the ensemble and both statistical checks for every (series, gamma).
// Every gamma reuses cfg.master_seed.
SweepResult run_sweep(const Model& model, const std::vector<double>& gammas,
                      const EnsembleConfig& cfg);

// First gamma at which series_a - series_b turns from positive to
// nonpositive, linearly interpolated between grid points.
std::optional<double> estimate_crossing(const std::vector<double>& gammas,
                                        const std::vector<double>& series_a,
                                        const std::vector<double>& series_b);

// preset,gamma,f_star,mean_F,stderr_F,mean_re_overlap,stderr_overlap,n_traj,dt,seed,stepper
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_summary(std::ostream& out, const SweepResult& result);

struct QslRow {
  std::string preset;
  double gamma = 0.0;
  Estimate bures_angle;
  QslReport report;
  double horizon = 0.0;
  bool satisfied = true;
};

std::vector<QslRow> run_qsl_sweep(const Model& model, const std::vector<double>& gammas,
                                  const EnsembleConfig& cfg);

// preset,gamma,mean_bures_angle,stderr,t_qsl,T,satisfied
void write_qsl_csv(std::ostream& out, const std::vector<QslRow>& rows);
void write_qsl_summary(std::ostream& out, const std::vector<QslRow>& rows);

}  // namespace noisebound::app

#endif  // NOISEBOUND_APP_EXPERIMENT_HPP_
