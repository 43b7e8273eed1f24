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


// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 when any
// criterion fails.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nsw/concentration.h"
#include "nsw/errors.h"
#include "nsw/generators.h"
#include "nsw/matching.h"
#include "nsw/oracle.h"
#include "nsw/pipeline.h"
#include "nsw/relaxation.h"
#include "nsw/rounding.h"
#include "nsw/splitting.h"
#include "oracles.h"

namespace nsw {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

uint64_t CaseSeed(uint64_t criterion, int k) {
  return RngStream(criterion).Substream(static_cast<uint64_t>(k)).seed();
}

GenSpec SmallSpec(RngStream& rng, const std::vector<Family>& families) {
  GenSpec g;
  g.family = families[rng.UniformInt(families.size())];
  g.n = 2 + static_cast<int>(rng.UniformInt(2));
  g.m = 4 + static_cast<int>(rng.UniformInt(3));
  g.dist = static_cast<WeightDist>(rng.UniformInt(3));
  g.seed = rng.NextU64();
  return g;
}

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[(xs.size() - 1) / 2];
}

std::vector<int> AllAgents(const Instance& inst) {
  std::vector<int> a(inst.num_agents());
  std::iota(a.begin(), a.end(), 0);
  return a;
}

// 1. run_xos NSW >= OPT / 1440.
Outcome XosFactor() {
  std::vector<double> ratios;
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    RngStream rng(CaseSeed(1, k));
    const Instance inst = Generate(SmallSpec(rng, {Family::kAdditive, Family::kXos}));
    PipelineParams p;
    p.seed = rng.NextU64();
    const double nsw = RunXos(inst, p).nsw;
    const double opt = ExactNsw(inst).optimum;
    if (std::abs(opt - testing::BruteNsw(inst)) > 1e-9 * (1.0 + opt)) {
      return {false, "exact oracle disagrees with brute force on case " + std::to_string(k)};
    }
    bad += nsw < opt / 1440.0;
    ratios.push_back(opt > 0.0 ? nsw / opt : 1.0);
  }
  return {bad == 0, "200 instances, " + std::to_string(bad) + " below OPT/1440; min ratio " +
                        Fmt(*std::min_element(ratios.begin(), ratios.end())) +
                        ", median " + Fmt(Median(ratios))};
}

// 2. run_subadditive (oracle procedure, epsilon 0.1) NSW >= OPT / 375000.
Outcome SubaddFactor() {
  std::vector<double> ratios;
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    RngStream rng(CaseSeed(2, k));
    const Instance inst = Generate(
        SmallSpec(rng, {Family::kBudgeted, Family::kTable, Family::kTableMixture}));
    PipelineParams p;
    p.seed = rng.NextU64();
    p.proc = "oracle";
    p.epsilon = 0.1;
    const double nsw = RunSubadditive(inst, p).nsw;
    const double opt = testing::BruteNsw(inst);
    bad += nsw < opt / 375000.0;
    ratios.push_back(opt > 0.0 ? nsw / opt : 1.0);
  }
  return {bad == 0, "100 instances, " + std::to_string(bad) +
                        " below OPT/375000; min ratio " +
                        Fmt(*std::min_element(ratios.begin(), ratios.end())) +
                        ", median " + Fmt(Median(ratios))};
}

// Random feasible configuration solution: a mixture of random allocations.
ConfigSolution RandomMixture(const Instance& inst, RngStream& rng) {
  const int n = inst.num_agents();
  const int parts = 1 + static_cast<int>(rng.UniformInt(4));
  std::vector<double> w(parts);
  double total = 0.0;
  for (double& x : w) total += (x = 0.05 + rng.Uniform());
  ConfigSolution x(n);
  for (int p = 0; p < parts; ++p) {
    std::vector<ItemSet> bundles(n);
    for (int j = 0; j < inst.num_items(); ++j) {
      const uint64_t who = rng.UniformInt(n + (rng.Bernoulli(0.5) ? 1 : 0));
      if (static_cast<int>(who) < n) bundles[who].Insert(j);
    }
    for (int i = 0; i < n; ++i) x.columns[i].push_back({bundles[i], w[p] / total});
  }
  return x;
}

// 3. Splitting bounds, rechecked from scratch with the value oracle.
Outcome SplittingBounds() {
  constexpr double kTol = 1e-9;
  int violations = 0;
  int runs = 0;
  std::string first;
  auto fail = [&](int k, const std::string& what) {
    if (violations++ == 0) first = "case " + std::to_string(k) + ": " + what;
  };
  for (int k = 0; k < 500; ++k) {
    RngStream rng(CaseSeed(3, k));
    GenSpec g = SmallSpec(rng, {Family::kAdditive, Family::kXos});
    g.m = 3 + static_cast<int>(rng.UniformInt(8));
    const Instance inst = Generate(g);
    const int n = inst.num_agents();
    ConfigSolution x;
    std::vector<double> vplus(n, 0.0);
    if (k % 2 == 0) {
      x = RandomMixture(inst, rng);
      for (int i = 0; i < n; ++i) vplus[i] = x.AgentValue(i, inst.valuation(i));
      for (int i = 0; i < n; ++i) {
        if (vplus[i] <= 0.0) x.columns[i].clear();
      }
    } else {
      const EgResult eg = SolveEg(inst, AllAgents(inst), inst.all_items());
      x = ConfigSolution(n);
      for (int i = 0; i < n; ++i) {
        x.columns[i] = eg.ext[i].columns;
        vplus[i] = x.AgentValue(i, inst.valuation(i));
        if (vplus[i] <= 0.0) x.columns[i].clear();
      }
    }
    ++runs;
    const XosSplitOutput out = SplitXos(x, inst, vplus);
    std::vector<double> load(inst.num_items(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (x.columns[i].empty()) continue;
      double mass = 0.0;
      for (size_t c = 0; c < out.config.columns[i].size(); ++c) {
        const Column& col = out.config.columns[i][c];
        const int l = out.large_item[i][c];
        mass += col.weight;
        for (int j : col.set) load[j] += col.weight;
        ItemSet with = col.set;
        with.Insert(l);
        if (col.set.Contains(l)) fail(k, "large item inside its part");
        if (inst.valuation(i).Value(with) < 0.25 * vplus[i] - kTol) fail(k, "v(T + l) < V+/4");
      }
      if (mass < 1.0 - kTol || mass > 3.0 + kTol) fail(k, "agent mass outside [1, 3]");
    }
    for (double l : load) {
      if (l > 0.75 + kTol) fail(k, "item load above 3/4");
    }
  }
  int drawn = 0;
  for (int k = 0; k < 500; ++k) {
    // Redraw until some agent meets V >= 6 nu.
    Instance inst;
    ConfigSolution x;
    std::vector<int> agents;
    std::vector<double> v, nu;
    while (agents.empty()) {
      RngStream rng(CaseSeed(33, drawn++));
      GenSpec g;
      g.family = static_cast<Family>(rng.UniformInt(5));
      g.n = 1 + static_cast<int>(rng.UniformInt(2));
      const bool table = g.family == Family::kTable || g.family == Family::kTableMixture;
      g.m = 10 + static_cast<int>(rng.UniformInt(table ? 7 : 21));
      g.dist = static_cast<WeightDist>(rng.UniformInt(3));
      g.cap_ratio = 0.5 + 0.5 * rng.Uniform();
      g.seed = rng.NextU64();
      inst = Generate(g);
      const int n = inst.num_agents();
      x = RandomMixture(inst, rng);
      v.assign(n, 0.0);
      nu.assign(n, 0.0);
      for (int i = 0; i < n; ++i) {
        v[i] = x.AgentValue(i, inst.valuation(i));
        nu[i] = inst.valuation(i).SingletonMax(inst.all_items());
        if (v[i] > 0.0 && v[i] >= 6.0 * nu[i]) agents.push_back(i);
      }
    }
    ++runs;
    const SubaddSplitOutput out = SplitSubadditive(x, inst, agents, v, nu);
    std::vector<double> load(inst.num_items(), 0.0);
    for (int i : agents) {
      double mass = 0.0;
      for (const Column& col : out.config.columns[i]) {
        mass += col.weight;
        for (int j : col.set) load[j] += col.weight;
        const double val = inst.valuation(i).Value(col.set);
        if (val < v[i] / 3.0 - nu[i] - kTol) fail(k, "v(T) < V/3 - nu");
        if (val > v[i] + kTol) fail(k, "v(T) > V");
      }
      if (std::abs(mass - 1.0) > kTol) fail(k, "agent mass is not 1");
    }
    for (double l : load) {
      if (l > 1.0 + kTol) fail(k, "item load above 1");
    }
  }
  return {violations == 0, std::to_string(runs) + " runs (500 XOS, 500 subadditive from " +
                               std::to_string(drawn) + " draws), " +
                               std::to_string(violations) + " violations" +
                               (first.empty() ? "" : "; first: " + first)};
}

// 4. Scaled optimum of the relaxation solution within (1 + alpha) n.
Outcome RelaxationContract() {
  double worst = 0.0;
  int bad = 0;
  for (int k = 0; k < 50; ++k) {
    RngStream rng(CaseSeed(4, k));
    GenSpec g = SmallSpec(rng, {Family::kAdditive, Family::kXos, Family::kBudgeted});
    g.n = 1 + static_cast<int>(rng.UniformInt(3));
    g.m = std::max(g.n, 2 + static_cast<int>(rng.UniformInt(5)));
    const Instance inst = Generate(g);
    const std::vector<int> agents = AllAgents(inst);
    EgParams params;
    params.alpha = 0.25;
    const EgResult eg = SolveEg(inst, agents, inst.all_items(), params);
    std::vector<double> scale(inst.num_agents());
    ConcaveExtOptions full;
    full.enumerate = true;
    for (int i : agents) scale[i] = ConcaveExt(inst.valuation(i), eg.x.mass[i], full).value;
    const double ratio = ExactConfigLp(inst, agents, inst.all_items(), scale).optimum;
    const double limit = 1.25 * inst.num_agents() + 1e-6;
    bad += ratio > limit;
    worst = std::max(worst, ratio / inst.num_agents());
  }
  return {bad == 0, "50 instances, " + std::to_string(bad) +
                        " above 1.25 n; worst ratio / n " + Fmt(worst)};
}

// 5. Column generation against the full enumeration LP.
Outcome ConcaveExtEquivalence() {
  double worst_delta = 0.0;
  double worst_gap = 0.0;
  double worst_vertex = 0.0;
  const std::vector<Family> fams = {Family::kAdditive, Family::kXos, Family::kBudgeted,
                                    Family::kTable, Family::kTableMixture};
  for (int k = 0; k < 100; ++k) {
    RngStream rng(CaseSeed(5, k));
    GenSpec g;
    g.family = fams[k % fams.size()];
    g.m = 1 + static_cast<int>(rng.UniformInt(10));
    g.dist = static_cast<WeightDist>(rng.UniformInt(3));
    RngStream vr(rng.NextU64());
    const Valuation v = GenerateValuation(g, vr);
    std::vector<double> x(g.m);
    for (double& xj : x) xj = rng.Bernoulli(0.15) ? 0.0 : rng.Uniform();
    const ConcaveExtValue cg = ConcaveExt(v, x);
    ConcaveExtOptions full;
    full.enumerate = true;
    const ConcaveExtValue en = ConcaveExt(v, x, full);
    worst_delta = std::max(worst_delta, std::abs(cg.value - en.value));
    // Certificate recomputed over every subset.
    double slack = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << g.m); ++mask) {
      double price = cg.q;
      for (int j : ItemSet(mask)) price += cg.p[j];
      slack = std::max(slack, v.Value(ItemSet(mask)) - price);
    }
    double dual = cg.q;
    for (int j = 0; j < g.m; ++j) dual += cg.p[j] * x[j];
    worst_gap = std::max({worst_gap, slack, dual - cg.value});
    if (g.m <= 4) {
      worst_vertex = std::max(worst_vertex, std::abs(cg.value - testing::VertexConcaveExt(v, x)));
    }
  }
  const bool pass = worst_delta <= 1e-6 && worst_gap <= 1e-6 && worst_vertex <= 1e-6;
  return {pass, "100 pairs; max |cg - enum| " + Fmt(worst_delta) + ", max certificate gap " +
                    Fmt(worst_gap) + ", max |cg - vertex LP| (m <= 4) " + Fmt(worst_vertex)};
}

// 6. Demand oracle against brute force.
Outcome DemandEquivalence() {
  const std::vector<Family> fams = {Family::kAdditive, Family::kXos, Family::kBudgeted,
                                    Family::kTable};
  int bad = 0;
  double worst = 0.0;
  for (size_t f = 0; f < fams.size(); ++f) {
    for (int k = 0; k < 500; ++k) {
      RngStream rng(CaseSeed(6, static_cast<int>(f) * 1000 + k));
      const bool rational = k % 2 == 0;
      GenSpec g;
      g.family = fams[f];
      g.m = 1 + static_cast<int>(rng.UniformInt(12));
      g.dist = rational ? WeightDist::kInteger : WeightDist::kUniform;
      RngStream vr(rng.NextU64());
      const Valuation v = GenerateValuation(g, vr);
      std::vector<double> p(g.m);
      for (double& pj : p) {
        pj = rational ? 0.25 * static_cast<double>(rng.UniformInt(41)) : 1.5 * rng.Uniform();
      }
      const DemandResult d = v.Demand(p);
      const double want = testing::BruteDemandUtility(v, p);
      double achieved = v.Value(d.set);
      for (int j : d.set) achieved -= p[j];
      const double err = std::max(std::abs(d.utility - want), std::abs(achieved - want));
      worst = std::max(worst, err);
      bad += rational ? err != 0.0 : err > 1e-12;
    }
  }
  return {bad == 0, "2000 pairs (4 families), " + std::to_string(bad) +
                        " mismatches; max error " + Fmt(worst)};
}

// Fixed 3-agent XOS instance for the rounding expectation.
Instance RoundingInstance() {
  std::vector<Valuation> vals;
  vals.push_back(Xos{{{4, 1, 0, 2, 3, 1, 2, 1}, {1, 3, 3, 0, 1, 2, 0, 2}}});
  vals.push_back(Xos{{{2, 2, 2, 2, 1, 1, 1, 1}, {0, 5, 1, 0, 2, 0, 3, 1}}});
  vals.push_back(Xos{{{3, 0, 1, 4, 0, 2, 2, 0}, {1, 1, 1, 1, 3, 3, 0, 2}}});
  return Instance::FromValuations(std::move(vals), 8);
}

// 7. E[(1/n) sum v+_i(x*_i) / v_i(R_i + l_i)] <= 90.
Outcome RoundingExpectation() {
  const Instance inst = RoundingInstance();
  const int n = inst.num_agents();
  const InitialMatching init = ComputeInitialMatching(inst);
  const EgResult eg = SolveEg(inst, init.active, init.rest);
  ConfigSolution x(n);
  for (int i : init.active) x.columns[i] = eg.ext[i].columns;
  const XosSplitOutput split = SplitXos(x, inst, eg.v_plus);
  const ExactResult star = ExactConfigLp(inst, init.active, init.rest, {});
  std::vector<double> star_plus(n, 0.0);
  ConcaveExtOptions full;
  full.enumerate = true;
  for (int i : init.active) {
    std::vector<double> marg(inst.num_items(), 0.0);
    for (const Column& c : star.config.columns[i]) {
      for (int j : c.set) marg[j] += c.weight;
    }
    star_plus[i] = ConcaveExt(inst.valuation(i), marg, full).value;
  }
  double sum = 0.0;
  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    const XosRoundOutcome r = RoundXos(split, inst, RngStream(CaseSeed(7, s)));
    double q = 0.0;
    for (int i : init.active) {
      ItemSet with = r.r.bundles[i];
      with.Insert(r.large_item[i]);
      q += star_plus[i] / inst.valuation(i).Value(with);
    }
    q /= n;
    sum += q;
    worst = std::max(worst, q);
  }
  const double mean = sum / 500.0;
  return {mean <= 90.0, "500 seeds, |A'| = " + std::to_string(init.active.size()) +
                            "; mean " + Fmt(mean) + ", max " + Fmt(worst) + " (bound 90)"};
}

// 8. Iterated-rounding exits per round and the log-ratio bound.
Outcome IteratedStructure() {
  int runs = 0;
  int short_rounds = 0;
  int bad_exits = 0;
  double worst_gm = 0.0;
  double worst_bound = 0.0;
  bool gm_ok = true;
  const OracleProcedure oracle;
  for (int inst_k = 0; inst_k < 4; ++inst_k) {
    GenSpec g;
    g.family = Family::kAdditive;
    g.n = 2 + inst_k % 2;
    g.m = g.n == 2 ? 24 : 30;
    g.seed = CaseSeed(8, inst_k);
    const Instance inst = Generate(g);
    PipelineParams p;
    p.proc = "oracle";
    const PipelineReport rep = RunSubadditive(inst, p);
    if (rep.a_double_prime.empty()) return {false, "fuzzed instance without A''"};
    const double delta = rep.delta;
    double log_sum = 0.0;
    int terms = 0;
    for (int s = 0; s < 200; ++s) {
      const IteratedOutcome it =
          IteratedRound(rep.sub_split, rep.init.rest, delta, oracle, inst,
                        RngStream(CaseSeed(88, inst_k * 1000 + s)));
      ++runs;
      for (const RoundLog& log : it.rounds) {
        int exited = 0;
        for (size_t a = 0; a < log.active.size(); ++a) {
          const int i = log.active[a];
          if (it.exit_round[i] != log.round) continue;
          ++exited;
          if (inst.valuation(i).Value(it.exit_set[i]) < delta * it.v_prime[i] - 1e-12) {
            ++bad_exits;
          }
        }
        const int need = static_cast<int>(std::ceil(delta * log.active.size() - 1e-9));
        short_rounds += exited < need;
      }
      if (!it.unfinished.empty()) ++short_rounds;
      for (int i : rep.a_double_prime) {
        log_sum += std::log(rep.eg.v_plus[i] /
                            (inst.valuation(i).Value(it.t.bundles[i]) + rep.nu[i]));
        ++terms;
      }
    }
    const double gm = std::exp(log_sum / terms);
    const double bound = 165.0 / (delta * delta);
    worst_gm = std::max(worst_gm, gm);
    worst_bound = bound;
    gm_ok = gm_ok && gm <= bound;
  }
  const bool pass = short_rounds == 0 && bad_exits == 0 && gm_ok;
  return {pass, std::to_string(runs) + " runs on 4 instances; short rounds " +
                    std::to_string(short_rounds) + ", exits below delta V' " +
                    std::to_string(bad_exits) + "; worst geometric mean " + Fmt(worst_gm) +
                    " (bound " + Fmt(worst_bound) + ")"};
}

// 9. Rematching lemma.
Outcome RematchingGuarantee() {
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    RngStream rng(CaseSeed(9, k));
    GenSpec g;
    g.family = static_cast<Family>(rng.UniformInt(3));
    g.n = 1 + static_cast<int>(rng.UniformInt(5));
    g.m = g.n + static_cast<int>(rng.UniformInt(5));
    g.dist = static_cast<WeightDist>(rng.UniformInt(3));
    g.seed = rng.NextU64();
    const Instance inst = Generate(g);
    const int n = inst.num_agents();
    const InitialMatching init = ComputeInitialMatching(inst);
    std::vector<int> h = init.h.ToVector();
    for (int a = n - 1; a > 0; --a) std::swap(h[a], h[rng.UniformInt(a + 1)]);
    Matching pi(n);
    for (int i = 0; i < n; ++i) pi.item_of[i] = h[i];
    std::vector<double> w(n), nu(n);
    for (int i = 0; i < n; ++i) {
      const double top = inst.valuation(i).SingletonMax(inst.all_items());
      w[i] = rng.Bernoulli(0.3) ? 0.0 : 1.5 * top * rng.Uniform();
      nu[i] = inst.valuation(i).SingletonMax(init.rest);
    }
    const Rematch re = RematchRho(init.tau, pi, w, nu, inst);
    std::vector<bool> used(inst.num_items(), false);
    bool ok = true;
    std::vector<double> lhs(n), rhs(n);
    for (int i = 0; i < n; ++i) {
      const int j = re.rho.item_of[i];
      if (j < 0 || !init.h.Contains(j) || used[j]) {
        ok = false;
        break;
      }
      used[j] = true;
      const Valuation& v = inst.valuation(i);
      lhs[i] = std::max(w[i], v.Singleton(j));
      rhs[i] = std::max({w[i], v.Singleton(pi.item_of[i]), nu[i]});
    }
    if (ok) {
      const long double l = testing::LogProduct(lhs);
      const long double r = testing::LogProduct(rhs);
      ok = l >= r - 1e-12L * (1.0L + std::abs(r));
    }
    bad += !ok;
  }
  return {bad == 0, "1000 tuples, " + std::to_string(bad) + " failures"};
}

// 10. Concentration suite.
Outcome ConcentrationSuite() {
  const std::vector<Family> fams = {Family::kBudgeted, Family::kXos, Family::kTableMixture,
                                    Family::kAdditive, Family::kTable};
  int checks = 0;
  int failed = 0;
  std::string first;
  for (int e = 0; e < 20; ++e) {
    RngStream rng(CaseSeed(10, e));
    GenSpec g;
    g.family = fams[e % fams.size()];
    g.m = 8 + static_cast<int>(rng.UniformInt(7));
    g.dist = static_cast<WeightDist>(rng.UniformInt(3));
    RngStream vr(rng.NextU64());
    TailExperiment exp;
    exp.f = GenerateValuation(g, vr);
    exp.base = ItemSet::Full(g.m);
    exp.prob.resize(g.m);
    for (double& p : exp.prob) p = 0.2 + 0.6 * rng.Uniform();
    exp.nu = exp.f.SingletonMax(exp.base);
    exp.trials = 100000;
    exp.q = 2;
    exp.k = 3;
    exp.seed = rng.NextU64();
    for (const CheckResult& c : RunAllChecks(exp)) {
      ++checks;
      if (!c.pass) {
        if (failed++ == 0) first = "function " + std::to_string(e) + " " + c.name;
      }
    }
  }
  return {failed == 0, std::to_string(checks) + " checks on 20 functions, " +
                           std::to_string(failed) + " failed" +
                           (first.empty() ? "" : "; first: " + first)};
}

// 11. Cascade identity.
Outcome CascadeIdentity() {
  const double p = CascadeProduct(40);
  return {std::abs(p - 0.25) <= 1e-6, "product " + Fmt(p)};
}

std::string RunCommand(const std::string& cmd, int* status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    *status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  *status = pclose(pipe);
  return out;
}

// 12. Byte-identical solve reports.
Outcome Determinism() {
  std::string detail;
  bool pass = true;
  for (const std::string flags :
       {std::string("--pipeline xos --seed 7"),
        std::string("--pipeline subadditive --proc oracle --seed 7")}) {
    for (const std::string instance : {std::string(NSW_DEMO_XOS), std::string(NSW_DEMO_SUB)}) {
      if (flags.find("xos") != std::string::npos && instance == NSW_DEMO_SUB) continue;
      const std::string cmd =
          std::string(NSW_FORGE_BIN) + " solve " + instance + " " + flags + " 2>/dev/null";
      int s1 = 0, s2 = 0;
      const std::string a = RunCommand(cmd, &s1);
      const std::string b = RunCommand(cmd, &s2);
      const bool same = s1 == 0 && s2 == 0 && !a.empty() && a == b;
      pass = pass && same;
      const std::string name = instance.substr(instance.find_last_of('/') + 1);
      detail += (detail.empty() ? "" : "; ") + name + " " + flags + ": " +
                (same ? "identical (" + std::to_string(a.size()) + " bytes)" : "DIFFERENT");
    }
  }
  return {pass, detail};
}

}  // namespace
}  // namespace nsw

int main() {
  using nsw::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"XOS end-to-end factor", nsw::XosFactor},
      {"Subadditive end-to-end factor", nsw::SubaddFactor},
      {"SetSplitting invariants", nsw::SplittingBounds},
      {"Relaxation-solver contract", nsw::RelaxationContract},
      {"Concave-extension oracle equivalence", nsw::ConcaveExtEquivalence},
      {"Demand-oracle equivalence", nsw::DemandEquivalence},
      {"Rounding expectation bound", nsw::RoundingExpectation},
      {"Iterated-rounding structure", nsw::IteratedStructure},
      {"Rematching guarantee", nsw::RematchingGuarantee},
      {"Concentration suite", nsw::ConcentrationSuite},
      {"Cascade identity", nsw::CascadeIdentity},
      {"Determinism", nsw::Determinism},
  };
  int failed = 0;
  for (size_t c = 0; c < criteria.size(); ++c) {
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c + 1 << "] " << criteria[c].first
              << ": " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
