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


#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "nsw/parallel.h"
#include "nsw/rng.h"

namespace nsw {
namespace {

TEST_CASE("streams are reproducible") {
  RngStream a(42), b(42);
  for (int t = 0; t < 10; ++t) CHECK(a.NextU64() == b.NextU64());
  RngStream base(42);
  const uint64_t first = base.Substream(3).NextU64();
  base.NextU64();
  CHECK(base.Substream(3).NextU64() == first);
  CHECK(base.Substream(3, 1).seed() == base.Substream(3).Substream(1).seed());
}

TEST_CASE("substreams differ") {
  const RngStream base(1);
  std::set<uint64_t> seen;
  for (uint64_t k = 0; k < 1000; ++k) seen.insert(base.Substream(k).NextU64());
  CHECK(seen.size() == 1000);
  CHECK(base.Substream(1, 2).seed() != base.Substream(2, 1).seed());
}

TEST_CASE("uniform int range") {
  RngStream rng(5);
  std::map<uint64_t, int> hist;
  for (int t = 0; t < 60000; ++t) ++hist[rng.UniformInt(6)];
  REQUIRE(hist.size() == 6);
  for (const auto& [v, c] : hist) {
    CHECK(v < 6);
    CHECK(c == doctest::Approx(10000).epsilon(0.05));
  }
  CHECK(rng.UniformInt(1) == 0);
}

TEST_CASE("geometric distribution") {
  RngStream rng(9);
  const int trials = 100000;
  int twos = 0;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int r = rng.Geometric(0.25);
    CHECK(r >= 1);
    twos += r == 2;
    sum += r;
  }
  CHECK(std::abs(static_cast<double>(twos) / trials - 0.1875) <= 0.005);
  CHECK(sum / trials == doctest::Approx(4.0).epsilon(0.02));
  CHECK(rng.Geometric(1.0) == 1);
}

TEST_CASE("parallel for covers every index once") {
  std::vector<int> hits(1000, 0);
  ParallelFor(1000, [&](int i) { hits[i] += 1; }, 4);
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(ParallelFor(10, [](int i) {
    if (i == 7) throw std::runtime_error("boom");
  }, 3));
}

}  // namespace
}  // namespace nsw
