// Copyright 2026 The ctopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTOPICS_RNG_H_
#define CTOPICS_RNG_H_

#include <cstdint>
#include <random>

namespace ctopics {

// Seeded 64-bit generator. The engine's output sequence is fixed by the
// standard, and the conversions below avoid the library distributions, whose
// algorithms vary between standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n).
  uint32_t UniformInt(uint32_t n) {
    auto v = static_cast<uint32_t>(Uniform() * n);
    return v < n ? v : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ctopics

#endif  // CTOPICS_RNG_H_
