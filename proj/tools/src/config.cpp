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

#include "noisebound/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace noisebound::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return !std::isspace(static_cast<unsigned char>(c)); };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, int line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw ConfigError(line, "expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view text, int line) {
  text = trim(text);
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(line, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_real(text.substr(start, end - start), line));
    start = end + 1;
  }
  return out;
}

// "<coef> <pauli string>" or "<pauli string>".
std::pair<double, std::string> parse_term(std::string_view text, int line) {
  text = trim(text);
  const std::size_t space = text.find_first_of(" \t");
  if (space == std::string_view::npos) return {1.0, std::string(text)};
  const double coef = parse_real(text.substr(0, space), line);
  return {coef, std::string(trim(text.substr(space + 1)))};
}

// Keyed view of one section with duplicate and unknown-key detection.
class SectionReader {
 public:
  SectionReader(const ConfigSection& section, std::set<std::string> allowed,
                std::set<std::string> repeatable = {})
      : section_(section) {
    for (const ConfigEntry& e : section.entries) {
      if (!allowed.contains(e.key)) {
        throw ConfigError(e.line, "unknown key '" + e.key + "' in [" + section.name + "]");
      }
      if (!repeatable.contains(e.key) && single_.contains(e.key)) {
        throw ConfigError(e.line, "duplicate key '" + e.key + "'");
      }
      single_[e.key] = &e;
    }
  }

  const ConfigEntry* find(const std::string& key) const {
    auto it = single_.find(key);
    return it == single_.end() ? nullptr : it->second;
  }

  const ConfigEntry& require(const std::string& key) const {
    const ConfigEntry* e = find(key);
    if (!e) throw ConfigError(section_.line, "[" + section_.name + "] needs '" + key + "'");
    return *e;
  }

  std::vector<const ConfigEntry*> all(const std::string& key) const {
    std::vector<const ConfigEntry*> out;
    for (const ConfigEntry& e : section_.entries) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }

  int line() const { return section_.line; }

 private:
  const ConfigSection& section_;
  std::map<std::string, const ConfigEntry*> single_;
};

ScalarSchedule parse_profile(const SectionReader& r) {
  const ConfigEntry* kind = r.find("profile");
  const std::string k = kind ? kind->value : "constant";
  const int line = kind ? kind->line : r.line();
  if (k == "constant") {
    if (r.find("times") || r.find("values")) {
      throw ConfigError(line, "constant profile takes no times/values");
    }
    return ScalarSchedule::constant(1.0);
  }
  const ConfigEntry& times = r.require("times");
  const ConfigEntry& values = r.require("values");
  try {
    if (k == "piecewise") {
      return ScalarSchedule::piecewise(parse_list(times.value, times.line),
                                       parse_list(values.value, values.line));
    }
    if (k == "sampled") {
      return ScalarSchedule::sampled(parse_list(times.value, times.line),
                                     parse_list(values.value, values.line));
    }
  } catch (const DomainError& e) {
    throw ConfigError(times.line, e.what());
  }
  throw ConfigError(line, "unknown profile '" + k + "' (constant, piecewise or sampled)");
}

HermitianOperator parse_terms(const SectionReader& r, const std::string& section) {
  std::vector<std::pair<double, std::string>> terms;
  const auto entries = r.all("term");
  if (entries.empty()) throw ConfigError(r.line(), "[" + section + "] needs at least one 'term'");
  Eigen::Index dim = 0;
  for (const ConfigEntry* e : entries) {
    auto term = parse_term(e->value, e->line);
    Eigen::Index d = 0;
    try {
      d = pauli_string(term.second).dim();
    } catch (const DomainError& err) {
      throw ConfigError(e->line, err.what());
    }
    if (dim != 0 && d != dim) {
      throw DimensionError("line " + std::to_string(e->line) + ": term '" + term.second +
                           "' acts on a different number of qubits");
    }
    dim = d;
    terms.push_back(std::move(term));
  }
  return pauli_sum(terms);
}

}  // namespace

std::vector<ConfigSection> parse_config_text(std::string_view text) {
  std::vector<ConfigSection> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s(raw);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "unterminated section header");
      const std::string name(trim(s.substr(1, s.size() - 2)));
      if (name.empty()) throw ConfigError(line, "empty section name");
      for (const ConfigSection& existing : sections) {
        if (existing.name == name) throw ConfigError(line, "duplicate section [" + name + "]");
      }
      sections.push_back(ConfigSection{name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
    if (sections.empty()) throw ConfigError(line, "key outside of any section");
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (value.empty()) throw ConfigError(line, "empty value for '" + key + "'");
    sections.back().entries.push_back(ConfigEntry{key, value, line});
  }
  return sections;
}

CustomRun load_custom_run(std::string_view text) {
  const std::vector<ConfigSection> sections = parse_config_text(text);
  const ConfigSection* control = nullptr;
  const ConfigSection* hamiltonian = nullptr;
  const ConfigSection* ensemble = nullptr;
  std::vector<std::pair<int, const ConfigSection*>> channel_sections;
  for (const ConfigSection& s : sections) {
    if (s.name == "control") {
      control = &s;
    } else if (s.name == "hamiltonian") {
      hamiltonian = &s;
    } else if (s.name == "ensemble") {
      ensemble = &s;
    } else if (s.name.starts_with("channel.")) {
      const int index = parse_int<int>(std::string_view(s.name).substr(8), s.line);
      if (index < 1) throw ConfigError(s.line, "channel numbers start at 1");
      channel_sections.emplace_back(index, &s);
    } else {
      throw ConfigError(s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!control) throw ConfigError(1, "missing [control] section");
  if (!hamiltonian) throw ConfigError(1, "missing [hamiltonian] section");
  std::sort(channel_sections.begin(), channel_sections.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const SectionReader ctl(*control, {"name", "T", "initial", "gammas"});
  const ConfigEntry* name = ctl.find("name");
  const ConfigEntry& horizon_entry = ctl.require("T");
  const double horizon = parse_real(horizon_entry.value, horizon_entry.line);
  if (!(horizon > 0.0)) throw ConfigError(horizon_entry.line, "T must be positive");
  const ConfigEntry& initial_entry = ctl.require("initial");

  CustomRun run{Model{name ? name->value : "custom", OperatorSchedule(2),
                      StateVector::from_label("0"), horizon, {}},
                {1.0},
                {}};
  try {
    run.model.initial = StateVector::from_label(initial_entry.value);
  } catch (const DomainError& e) {
    throw ConfigError(initial_entry.line, e.what());
  }
  if (const ConfigEntry* g = ctl.find("gammas")) {
    run.gammas = parse_list(g->value, g->line);
    try {
      validate_gamma_grid(run.gammas);
    } catch (const DomainError& e) {
      throw ConfigError(g->line, e.what());
    }
  }

  const SectionReader ham(*hamiltonian, {"u", "term", "profile", "times", "values"}, {"term"});
  const HermitianOperator h0 = parse_terms(ham, "hamiltonian");
  double u = 1.0;
  if (const ConfigEntry* e = ham.find("u")) u = parse_real(e->value, e->line);
  run.model.hamiltonian = OperatorSchedule::scaled(h0, parse_profile(ham).scaled(u));
  if (h0.dim() != run.model.initial.dim()) {
    throw DimensionError("line " + std::to_string(initial_entry.line) + ": initial state has " +
                         std::to_string(run.model.initial.dim()) + " amplitudes, Hamiltonian " +
                         std::to_string(h0.dim()));
  }
  if (run.model.hamiltonian.horizon() < horizon) {
    throw ConfigError(hamiltonian->line, "Hamiltonian profile does not cover [0, T]");
  }

  NoiseSeries series;
  for (const auto& [index, section] : channel_sections) {
    const SectionReader ch(*section, {"term", "gamma", "profile", "times", "values"}, {"term"});
    const HermitianOperator unit = parse_terms(ch, section->name);
    if (unit.dim() != h0.dim()) {
      throw DimensionError("line " + std::to_string(section->line) + ": [" + section->name +
                           "] acts on a different number of qubits than the Hamiltonian");
    }
    double scale = 1.0;
    if (const ConfigEntry* e = ch.find("gamma")) {
      scale = parse_real(e->value, e->line);
      if (scale < 0.0) throw ConfigError(e->line, "gamma must be nonnegative");
    }
    ScalarSchedule profile = parse_profile(ch).scaled(scale);
    if (profile.min_value() < 0.0) throw ConfigError(section->line, "negative noise profile");
    if (profile.horizon() < horizon) {
      throw ConfigError(section->line, "noise profile does not cover [0, T]");
    }
    // Check B^2 = gamma^2 I at unit sweep value; the condition is invariant
    // under the sweep scaling.
    const NoiseChannel probe{OperatorSchedule::scaled(unit, profile), profile};
    const NoiseCheck check = validate_noise(probe, horizon, 1001);
    if (!check.ok) {
      std::ostringstream msg;
      msg << "line " << section->line << ": [" << section->name
          << "] violates B(t)^2 = gamma(t)^2 I (max deviation " << check.worst_deviation
          << " at t = " << check.worst_time << ")";
      throw NoiseConditionError(msg.str(), check.worst_deviation, check.worst_time);
    }
    series.channels.push_back(ChannelTemplate{unit, profile});
  }
  run.model.series.push_back(std::move(series));

  if (ensemble) {
    const SectionReader ens(*ensemble, {"n_traj", "dt", "steps", "seed", "stepper", "workers"});
    EnsembleOverrides& o = run.ensemble;
    if (const ConfigEntry* e = ens.find("n_traj")) {
      o.n_traj = parse_int<int>(e->value, e->line);
      if (*o.n_traj < 2) throw ConfigError(e->line, "n_traj must be at least 2");
    }
    if (const ConfigEntry* e = ens.find("dt")) {
      o.dt = parse_real(e->value, e->line);
      if (!(*o.dt > 0.0)) throw ConfigError(e->line, "dt must be positive");
    }
    if (const ConfigEntry* e = ens.find("steps")) {
      if (o.dt) throw ConfigError(e->line, "give either dt or steps, not both");
      o.steps = parse_int<int>(e->value, e->line);
      if (*o.steps < 1) throw ConfigError(e->line, "steps must be positive");
    }
    if (const ConfigEntry* e = ens.find("seed")) o.seed = parse_int<std::uint64_t>(e->value, e->line);
    if (const ConfigEntry* e = ens.find("stepper")) {
      try {
        o.stepper = parse_stepper(e->value);
      } catch (const DomainError& err) {
        throw ConfigError(e->line, err.what());
      }
    }
    if (const ConfigEntry* e = ens.find("workers")) o.workers = parse_int<int>(e->value, e->line);
  }
  return run;
}

CustomRun load_custom_run_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_custom_run(buffer.str());
}

}  // namespace noisebound::app
