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

#ifndef NOISEBOUND_ERROR_HPP_
#define NOISEBOUND_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace noisebound {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions disagree (state vs operator, state vs state, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value is outside the domain an operation is defined on: time outside a
// schedule, non-Hermitian input, non-normalized state, bad step size.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A noise channel violates B(t)^2 = gamma(t)^2 I.
class NoiseConditionError : public Error {
 public:
  NoiseConditionError(const std::string& what, double worst_deviation, double worst_time)
      : Error(what), worst_deviation_(worst_deviation), worst_time_(worst_time) {}

  double worst_deviation() const { return worst_deviation_; }
  double worst_time() const { return worst_time_; }

 private:
  double worst_deviation_;
  double worst_time_;
};

}  // namespace noisebound

#endif  // NOISEBOUND_ERROR_HPP_
