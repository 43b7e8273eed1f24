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

#include "nsw/rng.h"

#include "nsw/errors.h"

namespace nsw {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::Substream(uint64_t key) const {
  return RngStream(SplitMix64(seed_ ^ SplitMix64(key ^ 0x5851f42d4c957f2dULL)));
}

uint64_t RngStream::UniformInt(uint64_t n) {
  NSW_REQUIRE(n >= 1, "UniformInt needs n >= 1");
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n + 1) % n;
  while (true) {
    const uint64_t r = engine_();
    if (r <= limit) return r % n;
  }
}

int RngStream::Geometric(double p) {
  NSW_REQUIRE(p > 0.0 && p <= 1.0, "geometric parameter must lie in (0, 1]");
  int t = 1;
  while (!Bernoulli(p)) ++t;
  return t;
}

}  // namespace nsw
