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

#ifndef NOISEBOUND_APP_CONFIG_HPP_
#define NOISEBOUND_APP_CONFIG_HPP_

// Custom-model configuration files.
//
//   # comment
//   [control]
//   name = my-run            # preset column of the CSV
//   T = 1.5707963267948966   # horizon
//   initial = 1              # product state label, one of 0 1 + - per qubit
//   gammas = 0.1, 0.2, 0.3   # sweep values (default 1)
//
//   [hamiltonian]
//   u = 1                    # H(t) = u * profile(t) * sum of terms
//   term = 1.0 Y             # coefficient and Pauli string; '@' separates qubits
//   profile = constant       # constant | piecewise | sampled
//   times = ...              # breakpoints / sample times for non-constant profiles
//   values = ...
//
//   [channel.1]              # B(t) = sweep * gamma * profile(t) * sum of terms
//   term = X
//   gamma = 1
//
//   [ensemble]
//   n_traj = 10000
//   dt = 0.0007853981633974483   # or steps = 2000
//   seed = 20240611
//   stepper = unitary            # unitary | em
//   workers = 4

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisebound/app/experiment.hpp"
#include "noisebound/error.hpp"
#include "noisebound/sde.hpp"

namespace noisebound::app {

class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;
};

// Syntax only: sections, key = value pairs, comments.
std::vector<ConfigSection> parse_config_text(std::string_view text);

// Ensemble settings that were given explicitly (file or command line).
struct EnsembleOverrides {
  std::optional<int> n_traj;
  std::optional<double> dt;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::optional<StepperKind> stepper;
  std::optional<int> workers;
};

struct CustomRun {
  Model model;
  std::vector<double> gammas;
  EnsembleOverrides ensemble;
};

// Builds the model; throws ConfigError (line-numbered) on malformed content,
// DimensionError on mismatched sizes and NoiseConditionError when a channel
// violates B^2 = gamma^2 I.
CustomRun load_custom_run(std::string_view text);
CustomRun load_custom_run_file(const std::filesystem::path& path);

}  // namespace noisebound::app

#endif  // NOISEBOUND_APP_CONFIG_HPP_
