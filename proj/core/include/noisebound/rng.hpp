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

#ifndef NOISEBOUND_RNG_HPP_
#define NOISEBOUND_RNG_HPP_

#include <cstdint>
#include <random>

namespace noisebound {

// Standard-normal stream addressed by (master seed, stream index).
//
// Each stream owns a mt19937_64 seeded through std::seed_seq from the four
// 32-bit halves of the two keys, so stream k never depends on how many other
// streams were drawn or in which order. Normals come from the Box-Muller
// transform of 53-bit uniforms; both the engine and the transform are fully
// specified, so draws are reproducible bit for bit on a given platform.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t master_seed, std::uint64_t stream_index);

  double next();

  // Uniform on (0, 1].
  double uniform();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace noisebound

#endif  // NOISEBOUND_RNG_HPP_
