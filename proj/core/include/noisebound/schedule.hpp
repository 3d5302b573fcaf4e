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

#ifndef NOISEBOUND_SCHEDULE_HPP_
#define NOISEBOUND_SCHEDULE_HPP_

#include <limits>
#include <optional>
#include <vector>

#include "noisebound/qcore.hpp"

namespace noisebound {

// Real-valued function of time on [0, horizon]. Used for control amplitudes
// u(t) and noise strengths gamma(t).
class ScalarSchedule {
 public:
  enum class Kind { kConstant, kPiecewiseConstant, kSampledGrid };

  // Defined for every t >= 0.
  static ScalarSchedule constant(double value);

  // `breakpoints` = {0 = b_0 < b_1 < ... < b_m}; segment i is [b_i, b_{i+1})
  // with value values[i], the final point b_m belongs to the last segment.
  static ScalarSchedule piecewise(std::vector<double> breakpoints, std::vector<double> values);

  // Samples at {0 = t_0 < ... < t_M}, linearly interpolated in between.
  static ScalarSchedule sampled(std::vector<double> times, std::vector<double> values);

  Kind kind() const { return kind_; }

  // Throws DomainError for t outside [0, horizon()].
  double operator()(double t) const;

  // End of the domain; +infinity for constant schedules.
  double horizon() const;
  bool covers(double t) const { return t >= 0.0 && t <= horizon() * (1.0 + 1e-12); }

  // Supremum of |value| over [0, t].
  double sup_abs(double t) const;
  double min_value() const;

  ScalarSchedule scaled(double factor) const;

  // Breakpoints (piecewise) or sample times (sampled); {0} for constant.
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  ScalarSchedule(Kind kind, std::vector<double> knots, std::vector<double> values);

  Kind kind_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

// H(t) = sum_k c_k(t) H_k.
class OperatorSchedule {
 public:
  struct Term {
    ScalarSchedule coefficient;
    HermitianOperator op;
  };

  explicit OperatorSchedule(Eigen::Index dim);
  static OperatorSchedule constant(HermitianOperator op);
  static OperatorSchedule scaled(HermitianOperator op, ScalarSchedule coefficient);

  OperatorSchedule& add(HermitianOperator op, ScalarSchedule coefficient);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool time_independent() const;
  double horizon() const;
  bool covers(double t) const;

  HermitianOperator at(double t) const;

  // out += scale * H(t), without validation; the hot path of the steppers.
  void accumulate(double t, double scale, CMatrix& out) const;

  OperatorSchedule scaled_by(double factor) const;

 private:
  Eigen::Index dim_;
  std::vector<Term> terms_;
};

// A stochastic noise term B(t) dW(t) with its claimed strength gamma(t),
// required to satisfy B(t)^2 = gamma(t)^2 I.
struct NoiseChannel {
  OperatorSchedule generator;
  ScalarSchedule strength;

  // B(t) = gamma(t) * unit_generator; the usual construction from a Pauli string.
  static NoiseChannel scaled(HermitianOperator unit_generator, ScalarSchedule strength);
};

}  // namespace noisebound

#endif  // NOISEBOUND_SCHEDULE_HPP_
