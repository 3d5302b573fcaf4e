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

#ifndef NOISEBOUND_BOUNDS_HPP_
#define NOISEBOUND_BOUNDS_HPP_

// Analytic fidelity bounds for dynamics under noise obeying B(t)^2 = gamma(t)^2 I:
//
//   E[F(t)] >= F* = exp(-sum_j int_0^t gamma_j(s)^2 ds)
//
// plus the gamma_max relaxation, the control-time inversion and the quantum
// speed limit T_QSL = sin^2 E[L(T)] / (sqrt(2) (max dH + max dB)).

#include <functional>
#include <span>
#include <vector>

#include "noisebound/qcore.hpp"
#include "noisebound/schedule.hpp"

namespace noisebound {

// Composite Simpson rule on [a, b], doubling the panel count until two
// successive estimates agree to `rel_tol` (relative, with an absolute floor
// of rel_tol * 1e-300 for vanishing integrals).
double simpson_integrate(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-8);

// int_0^t gamma(s)^2 ds. Closed form for constant and piecewise-constant
// schedules, composite Simpson between sample knots for sampled grids.
double integrate_gamma_squared(const ScalarSchedule& strength, double t);

// Same integral by quadrature only, split at the schedule knots.
double integrate_gamma_squared_quadrature(const ScalarSchedule& strength, double t,
                                          double rel_tol = 1e-8);

struct BoundReport {
  double t = 0.0;
  double f_star = 1.0;
  double integral_gamma_sq = 0.0;
  double gamma_max = 0.0;
  std::vector<double> per_channel;
};

BoundReport fidelity_lower_bound(std::span<const ScalarSchedule> strengths, double t);
BoundReport fidelity_lower_bound(std::span<const NoiseChannel> channels, double t);

// exp(-gamma_max^2 t).
double gamma_max_bound(double gamma_max, double t);

// -ln(target) / gamma_max^2: the shortest control time compatible with a mean
// fidelity `target` at noise level gamma_max.
double control_time_lower_bound(double gamma_max, double target_mean_fidelity);

struct QslReport {
  double t_qsl = 0.0;
  double mean_bures_angle = 0.0;
  double max_dev_h = 0.0;  // max_t sqrt(Var_{s0} H(t))
  double max_dev_b = 0.0;  // sum_j max_t sqrt(Var_{s0} B_j(t))
  bool bounded = true;     // false when the denominator vanishes (t_qsl = inf)
  bool multi_channel = false;
};

// Speed limit for leaving s0 by the mean Bures angle `mean_bures_angle`
// (which must lie in [0, pi/2]). Deviations are maximized over n_grid
// uniformly spaced times on [0, horizon]. Several channels contribute the sum
// of their individual deviations.
QslReport qsl_time(const OperatorSchedule& h, std::span<const NoiseChannel> channels,
                   const StateVector& s0, double horizon, double mean_bures_angle,
                   int n_grid = 1001);

}  // namespace noisebound

#endif  // NOISEBOUND_BOUNDS_HPP_
