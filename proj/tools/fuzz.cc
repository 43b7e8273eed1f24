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


#include "fuzz.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsw/errors.h"
#include "nsw/generators.h"
#include "nsw/matching.h"
#include "nsw/parallel.h"
#include "nsw/pipeline.h"
#include "nsw/relaxation.h"
#include "nsw/rng.h"

namespace nsw {
namespace {

template <typename T>
T Pick(const std::vector<T>& xs, RngStream& rng) {
  return xs[rng.UniformInt(xs.size())];
}

GenSpec DrawSpec(RngStream& rng, const std::vector<Family>& families, int n_lo,
                 int n_hi, int m_lo, int m_hi) {
  GenSpec g;
  g.family = Pick(families, rng);
  g.n = n_lo + static_cast<int>(rng.UniformInt(n_hi - n_lo + 1));
  g.m = std::max(g.n, m_lo + static_cast<int>(rng.UniformInt(m_hi - m_lo + 1)));
  g.dist = Pick(std::vector<WeightDist>{WeightDist::kUniform, WeightDist::kInteger,
                                        WeightDist::kHeavy},
                rng);
  g.seed = rng.NextU64();
  return g;
}

std::string SplitXosCase(RngStream& rng) {
  const GenSpec g = DrawSpec(rng, {Family::kAdditive, Family::kXos}, 1, 3, 3, 8);
  const Instance inst = Generate(g);
  PipelineParams p;
  p.seed = rng.NextU64();
  const PipelineReport rep = RunXos(inst, p);
  if (!rep.relaxed) return "";
  const XosSplitOutput& out = rep.xos_split;
  if (std::string e = CheckXosSplit(out, inst); !e.empty()) return e;
  std::vector<double> before(inst.num_items(), 0.0);
  for (int i : rep.init.active) {
    const auto& src = rep.eg.ext[i].columns;
    for (const Column& c : src) {
      for (int j : c.set) before[j] += c.weight;
    }
    std::vector<ItemSet> used(src.size());
    for (size_t c = 0; c < out.config.columns[i].size(); ++c) {
      const ItemSet part = out.config.columns[i][c].set;
      const int s = out.source[i][c];
      if (!part.IsSubsetOf(src[s].set)) return "part outside its source set";
      if (part.Intersects(used[s])) return "parts of one source overlap";
      if (out.large_item[i][c] < 0 || !src[s].set.Contains(out.large_item[i][c])) {
        return "large item outside its source set";
      }
      used[s] = used[s] | part;
    }
  }
  const std::vector<double> after = out.config.ItemLoads(inst.num_items());
  for (int j = 0; j < inst.num_items(); ++j) {
    if (after[j] > before[j] + 1e-9) return "split increased the mass of an item";
  }
  return "";
}

std::string SplitSubaddCase(RngStream& rng) {
  const GenSpec g =
      DrawSpec(rng, {Family::kBudgeted, Family::kTableMixture, Family::kTable}, 1, 3, 4, 10);
  const Instance inst = Generate(g);
  PipelineParams p;
  p.seed = rng.NextU64();
  const PipelineReport rep = RunSubadditive(inst, p);
  if (rep.a_double_prime.empty()) return "";
  const SubaddSplitOutput& out = rep.sub_split;
  if (std::string e = CheckSubaddSplit(out, inst); !e.empty()) return e;
  std::vector<double> before(inst.num_items(), 0.0);
  for (int i : rep.a_double_prime) {
    const auto& src = rep.eg.ext[i].columns;
    for (const Column& c : src) {
      for (int j : c.set) before[j] += c.weight;
    }
    for (const Column& part : out.config.columns[i]) {
      if (std::none_of(src.begin(), src.end(),
                       [&](const Column& c) { return part.set.IsSubsetOf(c.set); })) {
        return "part outside every source set";
      }
    }
  }
  const std::vector<double> after = out.config.ItemLoads(inst.num_items());
  for (int j = 0; j < inst.num_items(); ++j) {
    if (after[j] > before[j] + 1e-9) return "split increased the mass of an item";
  }
  return "";
}

std::string RoundXosCase(RngStream& rng) {
  const GenSpec g = DrawSpec(rng, {Family::kAdditive, Family::kXos}, 1, 3, 3, 8);
  const Instance inst = Generate(g);
  PipelineParams p;
  p.seed = rng.NextU64();
  const PipelineReport rep = RunXos(inst, p);
  if (!rep.relaxed) return "";
  const XosRoundOutcome& r = rep.xos_round;
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (!r.r.bundles[i].IsSubsetOf(r.tentative[i])) return "won items outside S_i";
    for (int j : r.r.bundles[i]) {
      const auto& t = r.contenders[j];
      if (std::find(t.begin(), t.end(), i) == t.end()) return "winner is not a contender";
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (!r.contenders[j].empty() && !r.r.Allocated().Contains(j)) {
      return "contested item left unassigned";
    }
  }
  if (!rep.allocation.IsValid(inst.num_items())) return "final allocation overlaps";
  return "";
}

std::string RoundSubaddCase(RngStream& rng) {
  const GenSpec g = DrawSpec(rng, {Family::kBudgeted, Family::kTableMixture}, 1, 3, 4, 9);
  const Instance inst = Generate(g);
  PipelineParams p;
  p.seed = rng.NextU64();
  p.proc = "oracle";
  const PipelineReport rep = RunSubadditive(inst, p);
  if (rep.a_double_prime.empty()) return "";
  const IteratedOutcome& it = rep.iterated;
  if (it.shortfall_rounds > 0) return "a round exited fewer than ceil(delta |A_t|) agents";
  for (const RoundLog& log : it.rounds) {
    int exited = 0;
    for (double ratio : log.ratio) exited += ratio >= rep.delta - 1e-12;
    if (exited != log.exited) return "exit count disagrees with the logged ratios";
  }
  for (int i : rep.a_double_prime) {
    const int t = it.exit_round[i];
    if (t == 0) continue;
    if (!it.t.bundles[i].IsSubsetOf(it.exit_set[i])) return "T_i outside S_i";
    for (int j : it.t.bundles[i]) {
      if (it.r[j] != t) return "T_i holds an item filtered to another round";
    }
    if (inst.valuation(i).Value(it.exit_set[i]) < rep.delta * it.v_prime[i] - 1e-9) {
      return "exiting agent below delta V'";
    }
  }
  return "";
}

std::string RelaxCase(RngStream& rng) {
  const GenSpec g =
      DrawSpec(rng, {Family::kAdditive, Family::kXos, Family::kBudgeted}, 1, 3, 2, 6);
  const Instance inst = Generate(g);
  std::vector<int> agents(inst.num_agents());
  std::iota(agents.begin(), agents.end(), 0);
  const EgResult eg = SolveEg(inst, agents, inst.all_items());
  const ScaledCheck sc = ScaledOptimumCheck(eg, inst, agents, inst.all_items(), 0.25);
  if (!sc.pass) {
    return "scaled optimum " + std::to_string(sc.ratio) + " exceeds " +
           std::to_string(sc.limit);
  }
  for (int i = 0; i < inst.num_agents(); ++i) {
    std::vector<double> x(inst.num_items());
    for (double& v : x) v = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform();
    const Valuation& v = inst.valuation(i);
    const ConcaveExtValue cg = ConcaveExt(v, x);
    ConcaveExtOptions full;
    full.enumerate = true;
    const ConcaveExtValue en = ConcaveExt(v, x, full);
    if (std::abs(cg.value - en.value) > 1e-6) return "column generation disagrees with enumeration";
    for (uint64_t mask = 0; mask < (uint64_t{1} << inst.num_items()); ++mask) {
      const ItemSet s(mask);
      double price = cg.q;
      for (int j : s) price += cg.p[j];
      if (v.Value(s) > price + 1e-6) return "dual certificate violated at {" + s.ToString() + "}";
    }
    if (cg.gap > 1e-6) return "dual gap " + std::to_string(cg.gap);
  }
  return "";
}

// Product-optimal matching by enumeration of injective maps.
MatchingObjective BruteMatching(const MatchingProblem& prob) {
  const int n = static_cast<int>(prob.score.size());
  const int m = static_cast<int>(prob.items.size());
  MatchingObjective best{-1, 0.0};
  std::vector<int> slot(n, -1);
  std::vector<bool> used(m, false);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      const MatchingObjective o = EvaluateMatching(prob, slot);
      if (o.positive > best.positive ||
          (o.positive == best.positive && o.log_sum > best.log_sum)) {
        best = o;
      }
      return;
    }
    for (int k = 0; k < m; ++k) {
      if (used[k]) continue;
      used[k] = true;
      slot[i] = k;
      self(self, i + 1);
      used[k] = false;
    }
  };
  rec(rec, 0);
  return best;
}

std::string MatchCase(RngStream& rng) {
  const GenSpec g =
      DrawSpec(rng, {Family::kAdditive, Family::kXos, Family::kBudgeted}, 1, 4, 1, 7);
  const Instance inst = Generate(g);
  const int n = inst.num_agents();
  const InitialMatching init = ComputeInitialMatching(inst);
  MatchingProblem prob;
  prob.items = inst.all_items().ToVector();
  prob.score.assign(n, std::vector<double>(prob.items.size()));
  for (int i = 0; i < n; ++i) {
    for (int j : prob.items) prob.score[i][j] = inst.valuation(i).Singleton(j);
  }
  const MatchingObjective got = EvaluateMatching(prob, init.tau.item_of);
  const MatchingObjective want = BruteMatching(prob);
  if (got.positive != want.positive || got.log_sum < want.log_sum - 1e-9) {
    return "initial matching is not product-optimal";
  }
  std::vector<int> h = init.h.ToVector();
  for (int a = static_cast<int>(h.size()) - 1; a > 0; --a) {
    std::swap(h[a], h[rng.UniformInt(a + 1)]);
  }
  Matching pi(n);
  for (int i = 0; i < n; ++i) pi.item_of[i] = h[i];
  std::vector<double> w(n), nu(n);
  for (int i = 0; i < n; ++i) {
    w[i] = rng.Bernoulli(0.2) ? 0.0 : 2.0 * rng.Uniform() * inst.valuation(i).SingletonMax(inst.all_items());
    nu[i] = rng.Bernoulli(0.3) ? 0.0 : inst.valuation(i).SingletonMax(init.rest);
  }
  const Rematch re = RematchRho(init.tau, pi, w, nu, inst);
  if (!re.rho.IsInjective() || !re.rho.Range().IsSubsetOf(init.h)) {
    return "rho is not a matching into H";
  }
  if (!RematchGuaranteeHolds(re.rho, pi, w, nu, inst)) return "rematching inequality fails";
  return "";
}

}  // namespace

uint64_t RunSeed(uint64_t seed, int index) {
  return RngStream(seed).Substream(static_cast<uint64_t>(index)).seed();
}

std::string FuzzCase(const std::string& module, uint64_t run_seed) {
  RngStream rng(run_seed);
  const bool odd = (run_seed & 1u) != 0;
  try {
    if (module == "split") return odd ? SplitSubaddCase(rng) : SplitXosCase(rng);
    if (module == "round") return odd ? RoundSubaddCase(rng) : RoundXosCase(rng);
    if (module == "relax") return RelaxCase(rng);
    if (module == "match") return MatchCase(rng);
  } catch (const InvariantViolation& e) {
    return e.what();
  }
  throw InputError("unknown fuzz module \"" + module + "\" (expected split|round|relax|match)");
}

FuzzReport RunFuzz(const std::string& module, int count, uint64_t seed) {
  NSW_REQUIRE(module == "split" || module == "round" || module == "relax" ||
                  module == "match",
              "unknown fuzz module \"" + module + "\" (expected split|round|relax|match)");
  NSW_REQUIRE(count >= 0, "count must be non-negative");
  FuzzReport rep;
  rep.module = module;
  rep.count = count;
  std::vector<std::string> results(count);
  ParallelFor(count, [&](int k) { results[k] = FuzzCase(module, RunSeed(seed, k)); });
  for (int k = 0; k < count; ++k) {
    if (!results[k].empty()) rep.failures.push_back({k, RunSeed(seed, k), results[k]});
  }
  return rep;
}

}  // namespace nsw
