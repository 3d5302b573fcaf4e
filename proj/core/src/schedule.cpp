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

#include "noisebound/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisebound/error.hpp"

namespace noisebound {
namespace {

void require_grid(const std::vector<double>& knots, std::size_t min_size, const char* what) {
  if (knots.size() < min_size) {
    throw DomainError(std::string(what) + ": too few knots");
  }
  if (knots.front() != 0.0) {
    throw DomainError(std::string(what) + ": schedule must start at t = 0");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1]) || !std::isfinite(knots[i])) {
      throw DomainError(std::string(what) + ": knots must be finite and strictly increasing");
    }
  }
}

}  // namespace

ScalarSchedule::ScalarSchedule(Kind kind, std::vector<double> knots, std::vector<double> values)
    : kind_(kind), knots_(std::move(knots)), values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("schedule values must be finite");
  }
}

ScalarSchedule ScalarSchedule::constant(double value) {
  return ScalarSchedule(Kind::kConstant, {0.0}, {value});
}

ScalarSchedule ScalarSchedule::piecewise(std::vector<double> breakpoints,
                                         std::vector<double> values) {
  require_grid(breakpoints, 2, "piecewise schedule");
  if (values.size() + 1 != breakpoints.size()) {
    throw DomainError("piecewise schedule: need one value per segment");
  }
  return ScalarSchedule(Kind::kPiecewiseConstant, std::move(breakpoints), std::move(values));
}

ScalarSchedule ScalarSchedule::sampled(std::vector<double> times, std::vector<double> values) {
  require_grid(times, 2, "sampled schedule");
  if (values.size() != times.size()) {
    throw DomainError("sampled schedule: need one value per sample time");
  }
  return ScalarSchedule(Kind::kSampledGrid, std::move(times), std::move(values));
}

double ScalarSchedule::horizon() const {
  if (kind_ == Kind::kConstant) return std::numeric_limits<double>::infinity();
  return knots_.back();
}

double ScalarSchedule::operator()(double t) const {
  if (!covers(t)) {
    throw DomainError("time " + std::to_string(t) + " outside schedule domain [0, " +
                      std::to_string(horizon()) + "]");
  }
  switch (kind_) {
    case Kind::kConstant:
      return values_[0];
    case Kind::kPiecewiseConstant: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      auto seg = static_cast<std::size_t>(std::distance(knots_.begin(), it));
      seg = std::clamp<std::size_t>(seg, 1, values_.size()) - 1;
      return values_[seg];
    }
    case Kind::kSampledGrid: {
      if (t >= knots_.back()) return values_.back();
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
      const double w = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
      return (1.0 - w) * values_[i] + w * values_[i + 1];
    }
  }
  return 0.0;
}

double ScalarSchedule::sup_abs(double t) const {
  if (!covers(t)) {
    throw DomainError("time " + std::to_string(t) + " outside schedule domain");
  }
  double best = std::abs((*this)(t));
  switch (kind_) {
    case Kind::kConstant:
      break;
    case Kind::kPiecewiseConstant:
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (knots_[i] <= t) best = std::max(best, std::abs(values_[i]));
      }
      break;
    case Kind::kSampledGrid:
      // Linear interpolation attains its extrema at the nodes.
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (knots_[i] <= t) best = std::max(best, std::abs(values_[i]));
      }
      break;
  }
  return best;
}

double ScalarSchedule::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

ScalarSchedule ScalarSchedule::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return ScalarSchedule(kind_, knots_, std::move(v));
}

OperatorSchedule::OperatorSchedule(Eigen::Index dim) : dim_(dim) {
  if (dim < 2) throw DomainError("operator schedule dimension must be at least 2");
}

OperatorSchedule OperatorSchedule::constant(HermitianOperator op) {
  return scaled(std::move(op), ScalarSchedule::constant(1.0));
}

OperatorSchedule OperatorSchedule::scaled(HermitianOperator op, ScalarSchedule coefficient) {
  OperatorSchedule s(op.dim());
  s.add(std::move(op), std::move(coefficient));
  return s;
}

OperatorSchedule& OperatorSchedule::add(HermitianOperator op, ScalarSchedule coefficient) {
  if (op.dim() != dim_) {
    throw DimensionError("operator schedule term has dimension " + std::to_string(op.dim()) +
                         ", expected " + std::to_string(dim_));
  }
  terms_.push_back(Term{std::move(coefficient), std::move(op)});
  return *this;
}

bool OperatorSchedule::time_independent() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.coefficient.kind() == ScalarSchedule::Kind::kConstant;
  });
}

double OperatorSchedule::horizon() const {
  double h = std::numeric_limits<double>::infinity();
  for (const Term& t : terms_) h = std::min(h, t.coefficient.horizon());
  return h;
}

bool OperatorSchedule::covers(double t) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [t](const Term& term) { return term.coefficient.covers(t); });
}

HermitianOperator OperatorSchedule::at(double t) const {
  CMatrix m = CMatrix::Zero(dim_, dim_);
  accumulate(t, 1.0, m);
  return HermitianOperator(std::move(m));
}

void OperatorSchedule::accumulate(double t, double scale, CMatrix& out) const {
  for (const Term& term : terms_) {
    const double c = scale * term.coefficient(t);
    if (c != 0.0) out += c * term.op.matrix();
  }
}

OperatorSchedule OperatorSchedule::scaled_by(double factor) const {
  OperatorSchedule s(dim_);
  for (const Term& term : terms_) s.add(term.op, term.coefficient.scaled(factor));
  return s;
}

NoiseChannel NoiseChannel::scaled(HermitianOperator unit_generator, ScalarSchedule strength) {
  if (strength.min_value() < 0.0) {
    throw DomainError("noise strength gamma(t) must be nonnegative");
  }
  return NoiseChannel{OperatorSchedule::scaled(std::move(unit_generator), strength), strength};
}

}  // namespace noisebound
