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

#ifndef NOISEBOUND_APP_RUNNER_HPP_
#define NOISEBOUND_APP_RUNNER_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "noisebound/app/config.hpp"
#include "noisebound/app/experiment.hpp"

namespace noisebound::app {

// Environment variable consulted for the master seed when neither the
// command line nor the config file sets one.
inline constexpr const char* kSeedEnvVar = "NOISEBOUND_SEED";

struct RunOptions {
  std::optional<std::vector<double>> gammas;
  EnsembleOverrides ensemble;
  std::filesystem::path out;
};

// Precedence: command line, then config file, then NOISEBOUND_SEED (seed
// only), then built-in defaults (dt = T / 2000).
EnsembleConfig resolve_ensemble(const EnsembleOverrides& flags, const EnsembleOverrides& file,
                                double horizon);

// Each returns a process exit code and writes the CSV to options.out.
int run_preset(const ExperimentPreset& preset, const RunOptions& options, std::ostream& summary);
int run_custom(const std::filesystem::path& config, const RunOptions& options,
               std::ostream& summary);
int run_qsl_report(const ExperimentPreset& preset, const RunOptions& options,
                   std::ostream& summary);

// Runs `body`, translating library exceptions into ExitCode values with a
// message on `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace noisebound::app

#endif  // NOISEBOUND_APP_RUNNER_HPP_
