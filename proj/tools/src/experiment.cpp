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

#include "noisebound/app/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "noisebound/error.hpp"

namespace noisebound::app {
namespace {

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

HermitianOperator pauli_sum(const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) throw DomainError("empty Pauli sum");
  CMatrix m;
  for (const auto& [coef, text] : terms) {
    const HermitianOperator p = pauli_string(text);
    if (m.size() == 0) {
      m = coef * p.matrix();
    } else if (m.rows() != p.dim()) {
      throw DimensionError("Pauli strings of different lengths in one sum ('" + text + "')");
    } else {
      m += coef * p.matrix();
    }
  }
  return HermitianOperator(std::move(m));
}

std::vector<NoiseChannel> Model::channels_at(const NoiseSeries& s, double gamma) const {
  std::vector<NoiseChannel> out;
  out.reserve(s.channels.size());
  for (const ChannelTemplate& c : s.channels) {
    ScalarSchedule strength = c.profile.scaled(gamma);
    out.push_back(NoiseChannel{OperatorSchedule::scaled(c.unit, strength), strength});
  }
  return out;
}

std::string Model::series_name(const NoiseSeries& s) const {
  return s.label.empty() ? name : name + "-" + s.label;
}

std::optional<PresetName> parse_preset_name(std::string_view text) {
  if (text == "fig1a") return PresetName::kFig1a;
  if (text == "fig1b") return PresetName::kFig1b;
  if (text == "fig2a") return PresetName::kFig2a;
  if (text == "fig2b") return PresetName::kFig2b;
  if (text == "qsl-report") return PresetName::kQslReport;
  return std::nullopt;
}

std::string_view to_string(PresetName name) {
  switch (name) {
    case PresetName::kFig1a: return "fig1a";
    case PresetName::kFig1b: return "fig1b";
    case PresetName::kFig2a: return "fig2a";
    case PresetName::kFig2b: return "fig2b";
    case PresetName::kQslReport: return "qsl-report";
  }
  return "unknown";
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 15; ++i) grid.push_back(i / 10.0);
  return grid;
}

void validate_gamma_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("gamma grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) {
      throw DomainError("gamma grid values must be finite and nonnegative");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("gamma grid must be strictly increasing");
    }
  }
}

Model build_model(const ExperimentPreset& preset) {
  if (!(preset.u > 0.0)) throw DomainError("control amplitude u must be positive");
  const double horizon = std::numbers::pi / (2.0 * preset.u);
  const ScalarSchedule u = ScalarSchedule::constant(preset.u);
  auto channel = [](const char* text) { return ChannelTemplate{pauli_string(text)}; };

  const std::string name(to_string(preset.name));
  switch (preset.name) {
    case PresetName::kFig1a:
    case PresetName::kQslReport:
      return Model{name, OperatorSchedule::scaled(pauli_sum({{1.0, "Y"}}), u),
                   StateVector::from_label("1"), horizon, {NoiseSeries{"", {channel("X")}}}};
    case PresetName::kFig1b:
      return Model{name, OperatorSchedule::scaled(pauli_sum({{1.0, "Y"}}), u),
                   StateVector::from_label("1"), horizon,
                   {NoiseSeries{"", {channel("X"), channel("Z")}}}};
    case PresetName::kFig2a:
    case PresetName::kFig2b: {
      const HermitianOperator swap = pauli_sum({{-0.5, "X@X"}, {-0.5, "Y@Y"}, {-0.5, "Z@Z"}});
      std::vector<NoiseSeries> series;
      if (preset.name == PresetName::kFig2a) {
        series = {NoiseSeries{"local", {channel("X@I")}},
                  NoiseSeries{"global", {channel("X@X")}}};
      } else {
        series = {NoiseSeries{"", {channel("X@I"), channel("I@X")}}};
      }
      return Model{name, OperatorSchedule::scaled(swap, u), StateVector::from_label("+0"), horizon,
                   std::move(series)};
    }
  }
  throw DomainError("unknown preset");
}

SweepResult run_sweep(const Model& model, const std::vector<double>& gammas,
                      const EnsembleConfig& cfg) {
  validate_gamma_grid(gammas);
  SweepResult result;
  std::vector<std::vector<double>> final_fidelity(model.series.size());
  for (std::size_t s = 0; s < model.series.size(); ++s) {
    const NoiseSeries& series = model.series[s];
    for (double gamma : gammas) {
      const std::vector<NoiseChannel> channels = model.channels_at(series, gamma);
      PresetRow row;
      row.preset = model.series_name(series);
      row.gamma = gamma;
      row.stats = run_ensemble(model.hamiltonian, channels, model.initial, model.horizon, cfg);
      row.bound = fidelity_lower_bound(channels, row.stats.final_snapshot().t);
      row.bound_check = check_bound(row.stats, channels, kCheckSigmas);
      row.overlap_check = check_overlap_decay(row.stats, channels, kCheckSigmas);
      result.all_passed = result.all_passed && row.bound_check.passed && row.overlap_check.passed;
      final_fidelity[s].push_back(row.stats.final_snapshot().fidelity.mean);
      result.rows.push_back(std::move(row));
    }
  }
  if (model.series.size() == 2) {
    result.crossing = estimate_crossing(gammas, final_fidelity[0], final_fidelity[1]);
  }
  return result;
}

std::optional<double> estimate_crossing(const std::vector<double>& gammas,
                                        const std::vector<double>& series_a,
                                        const std::vector<double>& series_b) {
  if (gammas.size() != series_a.size() || gammas.size() != series_b.size()) {
    throw DimensionError("estimate_crossing: series lengths differ from the gamma grid");
  }
  for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
    const double d0 = series_a[i] - series_b[i];
    const double d1 = series_a[i + 1] - series_b[i + 1];
    if (d0 > 0.0 && d1 <= 0.0) {
      return gammas[i] + (gammas[i + 1] - gammas[i]) * d0 / (d0 - d1);
    }
  }
  return std::nullopt;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "preset,gamma,f_star,mean_F,stderr_F,mean_re_overlap,stderr_overlap,n_traj,dt,seed,"
         "stepper\n";
  for (const PresetRow& row : result.rows) {
    const Snapshot& fin = row.stats.final_snapshot();
    out << row.preset << ',' << real(row.gamma) << ',' << real(row.bound.f_star) << ','
        << real(fin.fidelity.mean) << ',' << real(fin.fidelity.std_error) << ','
        << real(fin.re_overlap.mean) << ',' << real(fin.re_overlap.std_error) << ','
        << row.stats.n_traj << ',' << real(row.stats.dt) << ',' << row.stats.master_seed << ','
        << to_string(row.stats.stepper) << '\n';
  }
}

void write_sweep_summary(std::ostream& out, const SweepResult& result) {
  for (const PresetRow& row : result.rows) {
    const Snapshot& fin = row.stats.final_snapshot();
    out << row.preset << "  gamma=" << short_real(row.gamma)
        << "  F*=" << short_real(row.bound.f_star) << "  E[F(T)]=" << short_real(fin.fidelity.mean)
        << " +- " << short_real(fin.fidelity.std_error)
        << "  bound:" << (row.bound_check.passed ? "PASS" : "FAIL")
        << "  overlap:" << (row.overlap_check.passed ? "PASS" : "FAIL") << '\n';
  }
  if (result.crossing) {
    out << "crossing of E[F(T)] between series: gamma ~= " << short_real(*result.crossing) << '\n';
  }
  out << (result.all_passed ? "all checks passed" : "CHECK FAILURES") << '\n';
}

std::vector<QslRow> run_qsl_sweep(const Model& model, const std::vector<double>& gammas,
                                  const EnsembleConfig& cfg) {
  validate_gamma_grid(gammas);
  std::vector<QslRow> rows;
  for (const NoiseSeries& series : model.series) {
    for (double gamma : gammas) {
      const std::vector<NoiseChannel> channels = model.channels_at(series, gamma);
      const EnsembleStats stats =
          run_ensemble(model.hamiltonian, channels, model.initial, model.horizon, cfg);
      QslRow row;
      row.preset = model.series_name(series);
      row.gamma = gamma;
      row.bures_angle = stats.final_snapshot().bures_angle;
      row.horizon = model.horizon;
      row.report = qsl_time(model.hamiltonian, channels, model.initial, model.horizon,
                            row.bures_angle.mean);
      row.satisfied = model.horizon >= row.report.t_qsl;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_qsl_csv(std::ostream& out, const std::vector<QslRow>& rows) {
  out << "preset,gamma,mean_bures_angle,stderr,t_qsl,T,satisfied\n";
  for (const QslRow& row : rows) {
    out << row.preset << ',' << real(row.gamma) << ',' << real(row.bures_angle.mean) << ','
        << real(row.bures_angle.std_error) << ',' << real(row.report.t_qsl) << ','
        << real(row.horizon) << ',' << (row.satisfied ? "true" : "false") << '\n';
  }
}

void write_qsl_summary(std::ostream& out, const std::vector<QslRow>& rows) {
  bool all = true;
  bool multi = false;
  for (const QslRow& row : rows) {
    all = all && row.satisfied;
    multi = multi || row.report.multi_channel;
    out << row.preset << "  gamma=" << short_real(row.gamma)
        << "  E[L(T)]=" << short_real(row.bures_angle.mean) << " +- "
        << short_real(row.bures_angle.std_error) << "  T_QSL=" << short_real(row.report.t_qsl)
        << "  T=" << short_real(row.horizon) << "  " << (row.satisfied ? "PASS" : "FAIL") << '\n';
  }
  if (multi) {
    out << "note: several noise channels; their deviations are summed in the QSL denominator\n";
  }
  out << (all ? "T >= T_QSL on every row" : "CHECK FAILURES") << '\n';
}

}  // namespace noisebound::app
