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

// noisebound: Monte Carlo verification of fidelity bounds under stochastic
// Hamiltonian noise.
//
//   noisebound preset fig1a --n-traj 10000 --out fig1a.csv
//   noisebound custom model.cfg --gammas 0.25,0.5 --seed 7
//   noisebound qsl fig1a --gammas 0.25,0.5,1.0

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "noisebound/app/runner.hpp"

namespace {

using noisebound::app::ExitCode;

struct Flags {
  std::vector<double> gammas;
  int n_traj = 0;
  double dt = 0.0;
  int steps = 0;
  std::uint64_t seed = 0;
  std::string stepper;
  int workers = 0;
  double u = 1.0;
  std::string out;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--gammas", f.gammas, "Comma-separated noise strengths to sweep")
      ->delimiter(',');
  cmd->add_option("--n-traj", f.n_traj, "Trajectories per gamma")->check(CLI::Range(2, 1 << 30));
  cmd->add_option("--dt", f.dt, "Time step (default T/2000)")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", f.steps, "Number of time steps (alternative to --dt)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Master seed (fallback: $NOISEBOUND_SEED)");
  cmd->add_option("--stepper", f.stepper, "Integrator: unitary or em")
      ->check(CLI::IsMember({"unitary", "em", "unitary-exponential", "euler-maruyama"}));
  cmd->add_option("--workers", f.workers, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output CSV path");
}

noisebound::app::RunOptions to_options(const CLI::App* cmd, const Flags& f,
                                       const std::string& default_out) {
  noisebound::app::RunOptions o;
  if (cmd->count("--gammas")) o.gammas = f.gammas;
  if (cmd->count("--n-traj")) o.ensemble.n_traj = f.n_traj;
  if (cmd->count("--dt")) o.ensemble.dt = f.dt;
  if (cmd->count("--steps")) o.ensemble.steps = f.steps;
  if (cmd->count("--seed")) o.ensemble.seed = f.seed;
  if (cmd->count("--stepper")) o.ensemble.stepper = noisebound::parse_stepper(f.stepper);
  if (cmd->count("--workers")) o.ensemble.workers = f.workers;
  o.out = f.out.empty() ? default_out : f.out;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity bounds for closed quantum dynamics under stochastic noise"};
  app.require_subcommand(1);

  Flags flags;
  std::string preset_name;
  std::string config_path;

  auto* preset = app.add_subcommand("preset", "Run a built-in experiment (fig1a, fig1b, fig2a, "
                                              "fig2b, qsl-report)");
  preset->add_option("name", preset_name, "Preset name")->required();
  preset->add_option("--u", flags.u, "Control amplitude u (T = pi / 2u)")
      ->check(CLI::PositiveNumber);
  add_run_flags(preset, flags);

  auto* custom = app.add_subcommand("custom", "Run a model described by a config file");
  custom->add_option("config", config_path, "Config file")->required();
  add_run_flags(custom, flags);

  auto* qsl = app.add_subcommand("qsl", "Quantum speed limit report for a preset");
  qsl->add_option("name", preset_name, "Preset name")->required();
  qsl->add_option("--u", flags.u, "Control amplitude u (T = pi / 2u)")
      ->check(CLI::PositiveNumber);
  add_run_flags(qsl, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCode::kExitUsage;
  }

  auto make_preset = [&]() -> std::optional<noisebound::app::ExperimentPreset> {
    auto name = noisebound::app::parse_preset_name(preset_name);
    if (!name) {
      std::cerr << "unknown preset '" << preset_name
                << "' (expected fig1a, fig1b, fig2a, fig2b or qsl-report)\n";
      return std::nullopt;
    }
    noisebound::app::ExperimentPreset p;
    p.name = *name;
    p.u = flags.u;
    return p;
  };

  return noisebound::app::run_guarded(
      [&]() -> int {
        if (*preset) {
          auto p = make_preset();
          if (!p) return ExitCode::kExitUsage;
          return noisebound::app::run_preset(*p, to_options(preset, flags, preset_name + ".csv"),
                                             std::cout);
        }
        if (*qsl) {
          auto p = make_preset();
          if (!p) return ExitCode::kExitUsage;
          return noisebound::app::run_qsl_report(
              *p, to_options(qsl, flags, "qsl-" + preset_name + ".csv"), std::cout);
        }
        return noisebound::app::run_custom(config_path,
                                           to_options(custom, flags, "custom.csv"), std::cout);
      },
      std::cerr);
}
