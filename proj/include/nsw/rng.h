// Copyright 2026 The nsw-forge Authors
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

// Seeded random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; all derived draws use integer
// arithmetic or exact 53-bit conversions so results are identical across
// platforms and standard libraries.

#ifndef NSW_RNG_H_
#define NSW_RNG_H_

#include <cstdint>
#include <random>

namespace nsw {

uint64_t SplitMix64(uint64_t x);

class RngStream {
 public:
  explicit RngStream(uint64_t seed = 0) : seed_(seed), engine_(SplitMix64(seed)) {}

  uint64_t seed() const { return seed_; }

  // Independent stream keyed by (this seed, key); does not advance *this.
  RngStream Substream(uint64_t key) const;
  RngStream Substream(uint64_t key1, uint64_t key2) const {
    return Substream(key1).Substream(key2);
  }

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on {0, ..., n - 1}, n >= 1, by rejection.
  uint64_t UniformInt(uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Number of trials up to and including the first success, success
  // probability p in (0, 1]; Pr[t] = p (1 - p)^(t - 1).
  int Geometric(double p);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace nsw

#endif  // NSW_RNG_H_
