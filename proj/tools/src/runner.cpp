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

#include "noisebound/app/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace noisebound::app {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::optional<std::uint64_t> seed_from_env() {
  const char* value = std::getenv(kSeedEnvVar);
  if (!value || !*value) return std::nullopt;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(value, &end, 10);
  if (*end != '\0') {
    throw DomainError(std::string(kSeedEnvVar) + " is not an unsigned integer: '" + value + "'");
  }
  return seed;
}

std::vector<double> gammas_or(const RunOptions& options, std::vector<double> fallback) {
  return options.gammas ? *options.gammas : std::move(fallback);
}

}  // namespace

EnsembleConfig resolve_ensemble(const EnsembleOverrides& flags, const EnsembleOverrides& file,
                                double horizon) {
  EnsembleConfig cfg;
  auto pick = [](const auto& a, const auto& b) { return a ? a : b; };
  if (auto n = pick(flags.n_traj, file.n_traj)) cfg.n_traj = *n;
  if (auto s = pick(flags.stepper, file.stepper)) cfg.stepper = *s;
  if (auto w = pick(flags.workers, file.workers)) cfg.workers = *w;

  if (flags.dt) {
    cfg.dt = *flags.dt;
  } else if (flags.steps) {
    cfg.dt = horizon / *flags.steps;
  } else if (file.dt) {
    cfg.dt = *file.dt;
  } else if (file.steps) {
    cfg.dt = horizon / *file.steps;
  } else {
    cfg.dt = horizon / kDefaultStepsPerHorizon;
  }

  if (flags.seed) {
    cfg.master_seed = *flags.seed;
  } else if (file.seed) {
    cfg.master_seed = *file.seed;
  } else if (auto env = seed_from_env()) {
    cfg.master_seed = *env;
  }
  return cfg;
}

int run_preset(const ExperimentPreset& preset, const RunOptions& options, std::ostream& summary) {
  if (preset.name == PresetName::kQslReport) return run_qsl_report(preset, options, summary);
  const Model model = build_model(preset);
  const std::vector<double> gammas = gammas_or(options, preset.gamma_grid);
  const EnsembleConfig cfg = resolve_ensemble(options.ensemble, {}, model.horizon);
  const SweepResult result = run_sweep(model, gammas, cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  write_file(options.out, csv.str());
  write_sweep_summary(summary, result);
  return result.all_passed ? kExitOk : kExitCheckFailed;
}

int run_custom(const std::filesystem::path& config, const RunOptions& options,
               std::ostream& summary) {
  const CustomRun run = load_custom_run_file(config);
  const std::vector<double> gammas = gammas_or(options, run.gammas);
  const EnsembleConfig cfg = resolve_ensemble(options.ensemble, run.ensemble, run.model.horizon);
  const SweepResult result = run_sweep(run.model, gammas, cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  write_file(options.out, csv.str());
  write_sweep_summary(summary, result);
  return result.all_passed ? kExitOk : kExitCheckFailed;
}

int run_qsl_report(const ExperimentPreset& preset, const RunOptions& options,
                   std::ostream& summary) {
  const Model model = build_model(preset);
  const std::vector<double> gammas = gammas_or(options, preset.gamma_grid);
  const EnsembleConfig cfg = resolve_ensemble(options.ensemble, {}, model.horizon);
  const std::vector<QslRow> rows = run_qsl_sweep(model, gammas, cfg);
  std::ostringstream csv;
  write_qsl_csv(csv, rows);
  write_file(options.out, csv.str());
  write_qsl_summary(summary, rows);
  for (const QslRow& row : rows) {
    if (!row.satisfied) return kExitCheckFailed;
  }
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NoiseConditionError& e) {
    err << "rejected noise: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace noisebound::app
