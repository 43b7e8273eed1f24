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

#include "nsw/rounding.h"

#include <algorithm>
#include <cmath>

#include "nsw/errors.h"
#include "nsw/matching.h"

namespace nsw {

ContentionResult ResolveContention(const ConfigSolution& x,
                                   const std::vector<int>& agents, int num_items,
                                   const RngStream& rng) {
  const int n = static_cast<int>(x.columns.size());
  ContentionResult out;
  out.chosen.assign(n, -1);
  out.tentative.assign(n, ItemSet());
  out.won.assign(n, ItemSet());
  out.contenders.assign(num_items, {});
  for (int i : agents) {
    const auto& cols = x.columns[i];
    double total = 0.0;
    for (const Column& c : cols) total += c.weight;
    if (cols.empty() || total <= 0.0) continue;
    RngStream s = rng.Substream(kTagTentative, i);
    const double u = s.Uniform() * total;
    double acc = 0.0;
    int pick = static_cast<int>(cols.size()) - 1;
    for (size_t c = 0; c < cols.size(); ++c) {
      acc += cols[c].weight;
      if (u < acc) {
        pick = static_cast<int>(c);
        break;
      }
    }
    out.chosen[i] = pick;
    out.tentative[i] = cols[pick].set;
  }
  std::vector<int> sorted = agents;
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted) {
    for (int j : out.tentative[i]) out.contenders[j].push_back(i);
  }
  for (int j = 0; j < num_items; ++j) {
    const auto& t = out.contenders[j];
    if (t.empty()) continue;
    RngStream s = rng.Substream(kTagContention, j);
    const int winner = t.size() == 1 ? t[0] : t[s.UniformInt(t.size())];
    out.won[winner].Insert(j);
  }
  return out;
}

XosRoundOutcome RoundXos(const XosSplitOutput& split, const Instance& inst,
                         const RngStream& rng) {
  const int n = inst.num_agents();
  std::vector<int> agents;
  for (int i = 0; i < n; ++i) {
    if (!split.config.columns[i].empty()) agents.push_back(i);
  }
  ContentionResult cr = ResolveContention(split.config, agents, inst.num_items(), rng);
  XosRoundOutcome out;
  out.r = Allocation(n);
  out.r.bundles = cr.won;
  out.tentative = cr.tentative;
  out.chosen = cr.chosen;
  out.contenders = std::move(cr.contenders);
  out.large_item.assign(n, -1);
  for (int i : agents) out.large_item[i] = split.large_item[i][out.chosen[i]];
  NSW_CHECK(out.r.IsValid(inst.num_items()), "rounded bundles overlap");
  return out;
}

Allocation FinalizeWithMatching(const Allocation& r, ItemSet h,
                                const Instance& inst, Matching* sigma) {
  const int n = inst.num_agents();
  MatchingProblem prob;
  prob.items = h.ToVector();
  prob.score.assign(n, std::vector<double>(prob.items.size()));
  for (int i = 0; i < n; ++i) {
    for (size_t k = 0; k < prob.items.size(); ++k) {
      ItemSet s = r.bundles[i];
      s.Insert(prob.items[k]);
      prob.score[i][k] = inst.valuation(i).Value(s);
    }
  }
  const Matching m = ProductMatching(prob);
  Allocation out = r;
  for (int i = 0; i < n; ++i) out.bundles[i].Insert(m.item_of[i]);
  if (sigma != nullptr) *sigma = m;
  NSW_CHECK(out.IsValid(inst.num_items()), "final allocation overlaps");
  return out;
}

double ScaledWelfare(const std::vector<ItemSet>& sets,
                     const std::vector<int>& agents, const Instance& inst,
                     const std::vector<double>& v_prime) {
  double total = 0.0;
  for (int i : agents) total += inst.valuation(i).Value(sets[i]) / v_prime[i];
  return total;
}

std::vector<ItemSet> CrProcedure::Round(const ConfigSolution& x,
                                        const std::vector<int>& agents,
                                        const Instance& inst,
                                        const std::vector<double>& /*v_prime*/,
                                        const RngStream& rng) const {
  return ResolveContention(x, agents, inst.num_items(), rng).won;
}

std::vector<ItemSet> OracleProcedure::Round(const ConfigSolution& x,
                                            const std::vector<int>& agents,
                                            const Instance& inst,
                                            const std::vector<double>& v_prime,
                                            const RngStream& /*rng*/) const {
  const int n = static_cast<int>(x.columns.size());
  const int k = static_cast<int>(agents.size());
  std::vector<std::vector<ItemSet>> options(k);
  uint64_t combos = 1;
  for (int a = 0; a < k; ++a) {
    for (const Column& c : x.columns[agents[a]]) {
      if (c.weight > 0.0) options[a].push_back(c.set);
    }
    if (options[a].empty()) options[a].push_back(ItemSet());
    combos *= options[a].size();
    if (combos > 1'000'000) {
      throw CapExceeded("oracle procedure needs more than 10^6 support combinations");
    }
  }

  std::vector<ItemSet> best(n);
  double best_score = -1.0;
  uint64_t nodes = 0;
  std::vector<int> pick(k, 0);
  std::vector<ItemSet> sets(n);
  while (true) {
    // Contested items and their holders for this choice.
    std::vector<int> contested;
    std::vector<std::vector<int>> holders;
    for (int j = 0; j < inst.num_items(); ++j) {
      std::vector<int> h;
      for (int a = 0; a < k; ++a) {
        if (options[a][pick[a]].Contains(j)) h.push_back(a);
      }
      if (h.size() > 1) {
        contested.push_back(j);
        holders.push_back(std::move(h));
      }
    }
    std::vector<int> win(contested.size(), 0);
    while (true) {
      if (++nodes > kNodeCap) {
        throw CapExceeded("oracle procedure exceeded " + std::to_string(kNodeCap) +
                          " resolution nodes");
      }
      for (int a = 0; a < k; ++a) sets[agents[a]] = options[a][pick[a]];
      for (size_t c = 0; c < contested.size(); ++c) {
        for (size_t h = 0; h < holders[c].size(); ++h) {
          if (static_cast<int>(h) != win[c]) sets[agents[holders[c][h]]].Erase(contested[c]);
        }
      }
      const double score = ScaledWelfare(sets, agents, inst, v_prime);
      if (score > best_score) {
        best_score = score;
        best = sets;
      }
      size_t pos = 0;
      while (pos < contested.size()) {
        if (++win[pos] < static_cast<int>(holders[pos].size())) break;
        win[pos++] = 0;
      }
      if (pos == contested.size()) break;
    }
    int a = 0;
    while (a < k) {
      if (++pick[a] < static_cast<int>(options[a].size())) break;
      pick[a++] = 0;
    }
    if (a == k) break;
  }
  return best;
}

std::unique_ptr<RoundingProcedure> MakeProcedure(const std::string& name) {
  if (name == "cr") return std::make_unique<CrProcedure>();
  if (name == "oracle") return std::make_unique<OracleProcedure>();
  throw InputError("unknown rounding procedure \"" + name + "\" (expected cr|oracle)");
}

double MeasureOracleD(const ConfigSolution& x, const std::vector<int>& agents,
                      const Instance& inst, const std::vector<double>& v_prime) {
  const int k = static_cast<int>(agents.size());
  NSW_REQUIRE(k <= 16, "measuring d enumerates agent subsets; at most 16 agents");
  OracleProcedure oracle;
  double d = 1.0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << k); ++mask) {
    std::vector<int> sub;
    for (int a = 0; a < k; ++a) {
      if ((mask >> a) & 1u) sub.push_back(agents[a]);
    }
    const auto sets = oracle.Round(x, sub, inst, v_prime, RngStream());
    const double w = ScaledWelfare(sets, sub, inst, v_prime);
    NSW_CHECK(w > 0.0, "oracle procedure found no positive allocation");
    d = std::max(d, static_cast<double>(sub.size()) / w);
  }
  return d;
}

int IteratedRoundCap(int num_agents, double delta) {
  const double depth = std::log(std::max(num_agents, 1)) / -std::log1p(-delta);
  return static_cast<int>(std::ceil(depth - 1e-12)) + 10;
}

IteratedOutcome IteratedRound(const SubaddSplitOutput& split, ItemSet items,
                              double delta, const RoundingProcedure& proc,
                              const Instance& inst, const RngStream& rng) {
  NSW_REQUIRE(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const int n = inst.num_agents();
  const int m = inst.num_items();
  IteratedOutcome out;
  out.t = Allocation(n);
  out.exit_set.assign(n, ItemSet());
  out.exit_round.assign(n, 0);
  out.v_prime.assign(n, 0.0);
  out.r.assign(m, 0);

  std::vector<int> active;
  for (int i : split.agents) {
    if (split.config.columns[i].empty()) continue;
    active.push_back(i);
    for (const Column& c : split.config.columns[i]) {
      out.v_prime[i] += c.weight * inst.valuation(i).Value(c.set);
    }
    NSW_CHECK(out.v_prime[i] > 0.0, "V' vanished for agent " + std::to_string(i));
  }
  for (int j : items) {
    out.r[j] = rng.Substream(kTagGeometric, j).Geometric(delta);
  }
  out.round_cap = IteratedRoundCap(static_cast<int>(active.size()), delta);

  for (int t = 1; t <= out.round_cap && !active.empty(); ++t) {
    const std::vector<ItemSet> sets =
        proc.Round(split.config, active, inst, out.v_prime, rng.Substream(kTagRound, t));
    ItemSet seen;
    for (int i : active) {
      NSW_CHECK(!sets[i].Intersects(seen),
                proc.name() + " procedure returned overlapping sets");
      seen = seen | sets[i];
      const auto& cols = split.config.columns[i];
      NSW_CHECK(sets[i].empty() ||
                    std::any_of(cols.begin(), cols.end(),
                                [&](const Column& c) { return sets[i].IsSubsetOf(c.set); }),
                proc.name() + " procedure returned a set outside the support");
    }
    ItemSet r_t;
    for (int j : items) {
      if (out.r[j] == t) r_t.Insert(j);
    }
    RoundLog log;
    log.round = t;
    log.active = active;
    log.required = static_cast<int>(std::ceil(delta * active.size() - 1e-9));
    std::vector<int> next;
    for (int i : active) {
      const double ratio = inst.valuation(i).Value(sets[i]) / out.v_prime[i];
      log.ratio.push_back(ratio);
      if (ratio >= delta - 1e-12) {
        out.t.bundles[i] = sets[i] & r_t;
        out.exit_set[i] = sets[i];
        out.exit_round[i] = t;
        out.exit_order.push_back(i);
        ++log.exited;
      } else {
        next.push_back(i);
      }
    }
    if (log.exited < log.required) ++out.shortfall_rounds;
    out.rounds.push_back(std::move(log));
    active = std::move(next);
  }
  out.unfinished = active;
  NSW_CHECK(out.t.IsValid(m), "iterated rounding produced overlapping bundles");
  return out;
}

}  // namespace nsw
