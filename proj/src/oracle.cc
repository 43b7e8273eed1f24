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

#include "nsw/oracle.h"

#include <cmath>
#include <limits>

#include "nsw/errors.h"
#include "nsw/lp.h"

namespace nsw {
namespace {

// base^exp, or cap + 1 once it exceeds cap.
uint64_t PowCapped(uint64_t base, int exp, uint64_t cap) {
  uint64_t r = 1;
  for (int k = 0; k < exp; ++k) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Visits every assignment of `items` to `num_agents` slots as a mixed-radix
// counter; calls fn(bundles) with one ItemSet per slot.
template <typename Fn>
uint64_t ForEachAssignment(const std::vector<int>& items, int num_agents, Fn fn) {
  const int k = static_cast<int>(items.size());
  std::vector<int> digit(k, 0);
  std::vector<ItemSet> bundles(num_agents);
  for (int j : items) bundles[0].Insert(j);
  uint64_t nodes = 0;
  while (true) {
    ++nodes;
    fn(bundles);
    int pos = 0;
    while (pos < k) {
      bundles[digit[pos]].Erase(items[pos]);
      if (++digit[pos] < num_agents) {
        bundles[digit[pos]].Insert(items[pos]);
        break;
      }
      digit[pos] = 0;
      bundles[0].Insert(items[pos]);
      ++pos;
    }
    if (pos == k) break;
  }
  return nodes;
}

}  // namespace

ExactResult ExactNsw(const Instance& inst) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const uint64_t count = PowCapped(n, m, kAssignmentCap);
  if (count > kAssignmentCap) {
    throw CapExceeded("exact NSW needs n^m = " + std::to_string(n) + "^" +
                      std::to_string(m) + " assignments; cap is " +
                      std::to_string(kAssignmentCap));
  }
  ExactResult best;
  best.witness = Allocation(n);
  double best_log = -std::numeric_limits<double>::infinity();
  bool have = false;
  best.nodes = ForEachAssignment(
      inst.all_items().ToVector(), n, [&](const std::vector<ItemSet>& b) {
        double log_sum = 0.0;
        for (int i = 0; i < n && log_sum > -1e300; ++i) {
          const double v = inst.valuation(i).Value(b[i]);
          log_sum = v > 0.0 ? log_sum + std::log(v)
                            : -std::numeric_limits<double>::infinity();
        }
        if (!have || log_sum > best_log) {
          have = true;
          best_log = log_sum;
          best.witness.bundles = b;
        }
      });
  best.optimum = std::isinf(best_log) ? 0.0 : std::exp(best_log / n);
  return best;
}

ExactResult ExactScaledWelfare(const Instance& inst,
                               const std::vector<double>& scale,
                               ItemSet universe) {
  const int n = inst.num_agents();
  NSW_REQUIRE(static_cast<int>(scale.size()) == n, "one scale per agent");
  std::vector<int> agents;
  for (int i = 0; i < n; ++i) {
    if (scale[i] > 0.0) agents.push_back(i);
  }
  ExactResult best;
  best.witness = Allocation(n);
  if (agents.empty()) return best;
  const int k = static_cast<int>(agents.size());
  const uint64_t count = PowCapped(k, universe.size(), kAssignmentCap);
  if (count > kAssignmentCap) {
    throw CapExceeded("exact scaled welfare needs " + std::to_string(k) + "^" +
                      std::to_string(universe.size()) + " assignments; cap is " +
                      std::to_string(kAssignmentCap));
  }
  bool have = false;
  best.nodes = ForEachAssignment(
      universe.ToVector(), k, [&](const std::vector<ItemSet>& b) {
        double total = 0.0;
        for (int a = 0; a < k; ++a) {
          total += inst.valuation(agents[a]).Value(b[a]) / scale[agents[a]];
        }
        if (!have || total > best.optimum) {
          have = true;
          best.optimum = total;
          for (int a = 0; a < k; ++a) best.witness.bundles[agents[a]] = b[a];
        }
      });
  return best;
}

ExactResult ExactScaledWelfare(const Instance& inst,
                               const std::vector<double>& scale) {
  return ExactScaledWelfare(inst, scale, inst.all_items());
}

ExactResult ExactConfigLp(const Instance& inst, const std::vector<int>& agents,
                          ItemSet universe, const std::vector<double>& scale) {
  const int k = static_cast<int>(agents.size());
  const std::vector<int> items = universe.ToVector();
  const int u = static_cast<int>(items.size());
  const uint64_t columns = PowCapped(2, u, kConfigColumnCap) * k;
  if (u > 30 || columns > kConfigColumnCap) {
    throw CapExceeded("configuration LP needs " + std::to_string(k) + "*2^" +
                      std::to_string(u) + " columns; cap is " +
                      std::to_string(kConfigColumnCap));
  }
  std::vector<int> row_of(inst.num_items(), -1);
  for (int r = 0; r < u; ++r) row_of[items[r]] = r;

  PackingLp lp(std::vector<double>(u + k, 1.0));
  struct Col {
    int agent;
    ItemSet set;
  };
  std::vector<Col> meta;
  for (int a = 0; a < k; ++a) {
    const int i = agents[a];
    const double s = scale.empty() ? 1.0 : scale[i];
    NSW_REQUIRE(s > 0.0, "configuration LP scales must be positive");
    for (uint64_t local = 1; local < (uint64_t{1} << u); ++local) {
      ItemSet set;
      std::vector<std::pair<int, double>> entries;
      for (int r = 0; r < u; ++r) {
        if ((local >> r) & 1u) {
          set.Insert(items[r]);
          entries.emplace_back(r, 1.0);
        }
      }
      const double value = inst.valuation(i).Value(set);
      if (value <= 0.0) continue;
      entries.emplace_back(u + a, 1.0);
      lp.AddColumn(value / s, std::move(entries));
      meta.push_back({i, set});
    }
  }
  LpOptions opts;
  opts.max_iterations = 1'000'000;
  const LpResult res = lp.Solve(opts);
  NSW_CHECK(res.status == LpStatus::kOptimal,
            "configuration LP did not reach optimality");

  ExactResult out;
  out.optimum = res.objective;
  out.nodes = meta.size();
  out.config = ConfigSolution(inst.num_agents());
  for (size_t c = 0; c < meta.size(); ++c) {
    if (res.primal[c] > 1e-12) {
      out.config.columns[meta[c].agent].push_back({meta[c].set, res.primal[c]});
    }
  }
  return out;
}

ExactResult ExactConfigLp(const Instance& inst) {
  std::vector<int> agents(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) agents[i] = i;
  return ExactConfigLp(inst, agents, inst.all_items(), {});
}

}  // namespace nsw
