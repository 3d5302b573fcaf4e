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

#include "noisebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "noisebound/error.hpp"

namespace noisebound {
namespace {

double simpson_panels(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

void require_in_domain(const ScalarSchedule& s, double t) {
  if (!(t >= 0.0) || !s.covers(t)) {
    throw DomainError("time " + std::to_string(t) + " outside the noise schedule domain");
  }
}

}  // namespace

double simpson_integrate(const std::function<double(double)>& f, double a, double b,
                         double rel_tol) {
  if (a == b) return 0.0;
  int panels = 2;
  double previous = simpson_panels(f, a, b, panels);
  for (int iter = 0; iter < 20; ++iter) {
    panels *= 2;
    const double current = simpson_panels(f, a, b, panels);
    if (std::abs(current - previous) <= rel_tol * std::abs(current) ||
        std::abs(current - previous) <= 1e-300) {
      return current;
    }
    previous = current;
  }
  return previous;
}

double integrate_gamma_squared_quadrature(const ScalarSchedule& strength, double t,
                                          double rel_tol) {
  require_in_domain(strength, t);
  t = std::min(t, strength.horizon());
  // Integrate knot to knot so every panel sees a smooth integrand; piecewise
  // segments are closed on the left, so evaluate inside each segment.
  std::vector<double> cuts{0.0};
  for (double k : strength.knots()) {
    if (k > 0.0 && k < t) cuts.push_back(k);
  }
  cuts.push_back(t);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (strength.kind() == ScalarSchedule::Kind::kPiecewiseConstant) {
      const double v = strength(0.5 * (a + b));
      total += simpson_integrate([v](double) { return v * v; }, a, b, rel_tol);
    } else {
      total += simpson_integrate(
          [&strength](double s) {
            const double g = strength(s);
            return g * g;
          },
          a, b, rel_tol);
    }
  }
  return total;
}

double integrate_gamma_squared(const ScalarSchedule& strength, double t) {
  require_in_domain(strength, t);
  switch (strength.kind()) {
    case ScalarSchedule::Kind::kConstant: {
      const double g = strength.values()[0];
      return g * g * t;
    }
    case ScalarSchedule::Kind::kPiecewiseConstant: {
      const auto& b = strength.knots();
      const auto& v = strength.values();
      double total = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double len = std::min(b[i + 1], t) - b[i];
        if (len > 0.0) total += v[i] * v[i] * len;
      }
      return total;
    }
    case ScalarSchedule::Kind::kSampledGrid:
      return integrate_gamma_squared_quadrature(strength, t);
  }
  return 0.0;
}

BoundReport fidelity_lower_bound(std::span<const ScalarSchedule> strengths, double t) {
  if (!(t >= 0.0)) throw DomainError("fidelity_lower_bound: t must be nonnegative");
  BoundReport report;
  report.t = t;
  for (const ScalarSchedule& s : strengths) {
    const double contribution = integrate_gamma_squared(s, t);
    report.per_channel.push_back(contribution);
    report.integral_gamma_sq += contribution;
    report.gamma_max = std::max(report.gamma_max, s.sup_abs(t));
  }
  report.f_star = std::exp(-report.integral_gamma_sq);
  return report;
}

BoundReport fidelity_lower_bound(std::span<const NoiseChannel> channels, double t) {
  std::vector<ScalarSchedule> strengths;
  strengths.reserve(channels.size());
  for (const NoiseChannel& c : channels) strengths.push_back(c.strength);
  return fidelity_lower_bound(strengths, t);
}

double gamma_max_bound(double gamma_max, double t) {
  if (!(gamma_max >= 0.0) || !(t >= 0.0)) {
    throw DomainError("gamma_max_bound: gamma_max and t must be nonnegative");
  }
  return std::exp(-gamma_max * gamma_max * t);
}

double control_time_lower_bound(double gamma_max, double target_mean_fidelity) {
  if (!(gamma_max > 0.0)) {
    throw DomainError("control_time_lower_bound: gamma_max must be positive (unbounded otherwise)");
  }
  if (!(target_mean_fidelity > 0.0) || target_mean_fidelity > 1.0) {
    throw DomainError("control_time_lower_bound: target fidelity must lie in (0, 1]");
  }
  if (target_mean_fidelity == 1.0) return 0.0;
  return -std::log(target_mean_fidelity) / (gamma_max * gamma_max);
}

QslReport qsl_time(const OperatorSchedule& h, std::span<const NoiseChannel> channels,
                   const StateVector& s0, double horizon, double mean_bures_angle, int n_grid) {
  constexpr double kAngleSlack = 1e-12;
  if (!(mean_bures_angle >= -kAngleSlack && mean_bures_angle <= std::numbers::pi / 2 + kAngleSlack)) {
    throw DomainError("qsl_time: mean Bures angle must lie in [0, pi/2]");
  }
  if (n_grid < 2) throw DomainError("qsl_time: n_grid must be at least 2");
  if (!(horizon >= 0.0) || !h.covers(horizon)) {
    throw DomainError("qsl_time: Hamiltonian schedule does not cover [0, T]");
  }
  if (h.dim() != s0.dim()) throw DimensionError("qsl_time: state and Hamiltonian differ in size");

  QslReport report;
  report.mean_bures_angle = std::clamp(mean_bures_angle, 0.0, std::numbers::pi / 2);
  report.multi_channel = channels.size() > 1;
  std::vector<double> channel_max(channels.size(), 0.0);
  for (int i = 0; i < n_grid; ++i) {
    const double t = horizon * i / (n_grid - 1);
    report.max_dev_h = std::max(report.max_dev_h, std::sqrt(variance(h.at(t), s0)));
    for (std::size_t j = 0; j < channels.size(); ++j) {
      channel_max[j] =
          std::max(channel_max[j], std::sqrt(variance(channels[j].generator.at(t), s0)));
    }
  }
  for (double m : channel_max) report.max_dev_b += m;

  const double s = std::sin(report.mean_bures_angle);
  const double numerator = s * s;
  const double denominator = std::sqrt(2.0) * (report.max_dev_h + report.max_dev_b);
  if (numerator == 0.0) {
    report.t_qsl = 0.0;
  } else if (denominator == 0.0) {
    report.t_qsl = std::numeric_limits<double>::infinity();
    report.bounded = false;
  } else {
    report.t_qsl = numerator / denominator;
  }
  return report;
}

}  // namespace noisebound
