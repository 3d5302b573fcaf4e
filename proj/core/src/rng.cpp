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

#include "noisebound/rng.hpp"

#include <cmath>
#include <numbers>

namespace noisebound {
namespace {

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : engine_(make_engine(master_seed, stream_index)) {}

double GaussianStream::uniform() {
  // 53 random bits -> [0, 1), flipped to (0, 1] so the log below is finite.
  return 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace noisebound
