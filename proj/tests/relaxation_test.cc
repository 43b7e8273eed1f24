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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "nsw/generators.h"
#include "nsw/relaxation.h"
#include "oracles.h"

namespace nsw {
namespace {

const Valuation kCross = Xos{{{2, 0}, {0, 2}}};

TEST_CASE("concave extension examples") {
  const std::vector<double> half = {0.5, 0.5};
  const ConcaveExtValue e = ConcaveExt(kCross, half);
  CHECK(e.value == doctest::Approx(2.0));
  CHECK(e.converged);
  double mass = 0.0;
  for (const Column& c : e.columns) mass += c.weight;
  CHECK(mass == doctest::Approx(1.0));

  const Valuation b = BudgetedAdditive{{1, 1}, 1};
  CHECK(ConcaveExt(b, std::vector<double>{1, 1}).value == doctest::Approx(1.0));
  CHECK(ConcaveExt(b, std::vector<double>{0.5, 0.5}).value == doctest::Approx(1.0));
  CHECK(ConcaveExt(b, std::vector<double>{0, 0}).value == 0.0);

  const Valuation a = Additive{{3, 1}};
  CHECK(ConcaveExt(a, std::vector<double>{0.5, 1}).value == doctest::Approx(2.5));
}

TEST_CASE("concave extension matches vertex enumeration") {
  for (int seed = 0; seed < 150; ++seed) {
    RngStream rng(seed);
    GenSpec g;
    g.family = static_cast<Family>(seed % 5);
    g.m = 1 + seed % 4;
    const Valuation v = GenerateValuation(g, rng);
    std::vector<double> x(g.m);
    for (double& t : x) t = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform();
    const double want = testing::VertexConcaveExt(v, x);
    const ConcaveExtValue cg = ConcaveExt(v, x);
    const ConcaveExtValue en = ConcaveExt(v, x, {.enumerate = true});
    CHECK(cg.value == doctest::Approx(want).epsilon(1e-9));
    CHECK(en.value == doctest::Approx(want).epsilon(1e-9));
    CHECK(cg.DualValue(x) >= want - 1e-9);
    // Primal columns form a distribution whose marginals stay below x.
    std::vector<double> marg(g.m, 0.0);
    double value = 0.0;
    for (const Column& c : cg.columns) {
      value += c.weight * v.Value(c.set);
      for (int j : c.set) marg[j] += c.weight;
    }
    CHECK(value == doctest::Approx(cg.value).epsilon(1e-9));
    for (int j = 0; j < g.m; ++j) CHECK(marg[j] <= x[j] + 1e-9);
  }
}

TEST_CASE("dual certificate bounds every point") {
  RngStream rng(3);
  GenSpec g;
  g.family = Family::kXos;
  g.m = 4;
  const Valuation v = GenerateValuation(g, rng);
  const std::vector<double> x = {0.3, 0.6, 0.2, 0.9};
  const ConcaveExtValue e = ConcaveExt(v, x);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> y(4);
    for (double& s : y) s = rng.Uniform();
    CHECK(e.DualValue(y) >= testing::VertexConcaveExt(v, y) - 1e-9);
  }
}

TEST_CASE("supergradient") {
  const std::vector<double> x = {0.5, 0.25};
  const Supergradient s = SupergradientLog(Valuation(Additive{{2, 4}}), x);
  CHECK(s.base == doctest::Approx(std::log(2.0)));
  CHECK(s.grad[0] == doctest::Approx(1.0));
  CHECK(s.grad[1] == doctest::Approx(2.0));
}

TEST_CASE("capped simplex projection") {
  std::vector<double> y = ProjectCappedSimplex({0.2, 0.3}, 0.0);
  CHECK(y[0] == doctest::Approx(0.2));
  CHECK(y[1] == doctest::Approx(0.3));
  y = ProjectCappedSimplex({1.0, 1.0}, 0.0);
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(y[1] == doctest::Approx(0.5));
  y = ProjectCappedSimplex({2.0, -1.0}, 0.1);
  CHECK(y[0] == doctest::Approx(0.9));
  CHECK(y[1] == doctest::Approx(0.1));
}

TEST_CASE("corollary epsilon") {
  CHECK(CorollaryEpsilon(0.25, 2) == doctest::Approx(0.25 / 4.5));
}

TEST_CASE("eisenberg-gale small cases") {
  const Instance one = Instance::FromValuations({Additive{{1, 2, 3}}}, 3);
  EgResult eg = SolveEg(one, {0}, one.all_items());
  for (int j = 0; j < 3; ++j) CHECK(eg.x.mass[0][j] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eg.objective == doctest::Approx(std::log(6.0)).epsilon(1e-6));

  const Instance twins = Instance::FromValuations({Additive{{1}}, Additive{{1}}}, 1);
  eg = SolveEg(twins, {0, 1}, twins.all_items());
  CHECK(eg.x.mass[0][0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(eg.x.mass[1][0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(eg.objective == doctest::Approx(2 * std::log(0.5)).epsilon(1e-4));

  const Instance disjoint = Instance::FromValuations(
      {Additive{{1, 2, 0, 0}}, Additive{{0, 0, 3, 1}}}, 4);
  eg = SolveEg(disjoint, {0, 1}, disjoint.all_items());
  CHECK(eg.x.mass[0][0] == doctest::Approx(1.0 - eg.epsilon).epsilon(1e-6));
  CHECK(eg.x.mass[1][2] == doctest::Approx(1.0 - eg.epsilon).epsilon(1e-6));
}

TEST_CASE("eisenberg-gale relaxation") {
  for (int seed = 0; seed < 12; ++seed) {
    GenSpec g;
    g.family = static_cast<Family>(seed % 5);
    g.n = 2 + seed % 2;
    g.m = 5;
    g.seed = 100 + seed;
    const Instance inst = Generate(g);
    std::vector<int> agents(inst.num_agents());
    std::iota(agents.begin(), agents.end(), 0);
    const EgResult eg = SolveEg(inst, agents, inst.all_items());
    REQUIRE(eg.x.IsFeasible());
    for (int j = 0; j < inst.num_items(); ++j) {
      double load = 0.0;
      for (int i : agents) {
        CHECK(eg.x.mass[i][j] >= eg.epsilon - 1e-12);
        load += eg.x.mass[i][j];
      }
      CHECK(load <= 1.0 + 1e-9);
    }
    for (int i : agents) CHECK(eg.v_plus[i] > 0.0);
    const ScaledCheck check = ScaledOptimumCheck(eg, inst, agents, inst.all_items(), 0.25);
    CHECK(check.pass);
    CHECK(check.ratio <= check.limit);
    CHECK(eg.ratio_bound >= check.ratio - 1e-6);
  }
}

}  // namespace
}  // namespace nsw
