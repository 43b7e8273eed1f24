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


#include <vector>

#include "doctest.h"
#include "nsw/lp.h"
#include "nsw/rng.h"
#include "oracles.h"

namespace nsw {
namespace {

TEST_CASE("small packing lp") {
  // max x + y, x + 2y <= 4, 3x + y <= 6: optimum (8/5, 6/5).
  PackingLp lp({4, 6});
  lp.AddColumn(1, {{0, 1}, {1, 3}});
  lp.AddColumn(1, {{0, 2}, {1, 1}});
  const LpResult r = lp.Solve();
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.8));
  CHECK(r.primal[0] == doctest::Approx(1.6));
  CHECK(r.primal[1] == doctest::Approx(1.2));
  CHECK(r.dual[0] == doctest::Approx(0.4));
  CHECK(r.dual[1] == doctest::Approx(0.2));
}

TEST_CASE("empty and unbounded") {
  PackingLp none({1});
  CHECK(none.Solve().objective == 0.0);
  PackingLp free_col({1});
  free_col.AddColumn(1, {});
  CHECK(free_col.Solve().status == LpStatus::kUnbounded);
}

TEST_CASE("strong duality on random packing lps") {
  for (int seed = 0; seed < 100; ++seed) {
    RngStream rng(seed);
    const int rows = 1 + static_cast<int>(rng.UniformInt(6));
    const int cols = 1 + static_cast<int>(rng.UniformInt(12));
    std::vector<double> rhs(rows);
    for (double& b : rhs) b = 0.5 + rng.Uniform();
    PackingLp lp(rhs);
    std::vector<std::vector<double>> a(cols, std::vector<double>(rows, 0.0));
    std::vector<double> cost(cols);
    for (int c = 0; c < cols; ++c) {
      cost[c] = rng.Uniform();
      std::vector<std::pair<int, double>> entries;
      for (int r = 0; r < rows; ++r) {
        if (rng.Bernoulli(0.6) || r == c % rows) {
          a[c][r] = 0.1 + rng.Uniform();
          entries.emplace_back(r, a[c][r]);
        }
      }
      lp.AddColumn(cost[c], entries);
    }
    const LpResult res = lp.Solve();
    REQUIRE(res.status == LpStatus::kOptimal);
    double primal = 0.0;
    for (int c = 0; c < cols; ++c) {
      CHECK(res.primal[c] >= -1e-9);
      primal += cost[c] * res.primal[c];
    }
    double dual = 0.0;
    for (int r = 0; r < rows; ++r) {
      CHECK(res.dual[r] >= -1e-9);
      double load = 0.0;
      for (int c = 0; c < cols; ++c) load += a[c][r] * res.primal[c];
      CHECK(load <= rhs[r] + 1e-9);
      dual += rhs[r] * res.dual[r];
    }
    for (int c = 0; c < cols; ++c) {
      double reduced = 0.0;
      for (int r = 0; r < rows; ++r) reduced += a[c][r] * res.dual[r];
      CHECK(reduced >= cost[c] - 1e-9);
    }
    CHECK(primal == doctest::Approx(res.objective).epsilon(1e-9));
    CHECK(dual == doctest::Approx(res.objective).epsilon(1e-9));
  }
}

}  // namespace
}  // namespace nsw
