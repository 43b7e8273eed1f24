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

#include "nsw/splitting.h"

#include <algorithm>
#include <cmath>

#include "nsw/errors.h"

namespace nsw {
namespace {

// Relative slack for threshold comparisons.
double Slack(double scale) { return 1e-12 * (1.0 + std::abs(scale)); }

std::string Where(int agent, ItemSet part) {
  return "agent " + std::to_string(agent) + ", part {" + part.ToString() + "}";
}

}  // namespace

XosSplitOutput SplitXos(const ConfigSolution& x, const Instance& inst,
                        const std::vector<double>& v_plus) {
  const int n = inst.num_agents();
  XosSplitOutput out;
  out.config = ConfigSolution(n);
  out.large_item.assign(n, {});
  out.source.assign(n, {});
  out.v_plus = v_plus;
  for (int i = 0; i < n; ++i) {
    if (x.columns[i].empty()) continue;
    const Valuation& v = inst.valuation(i);
    NSW_REQUIRE(v.IsXosRepresented(), "pipeline requires XOS valuations");
    const double target = 0.25 * v_plus[i];
    NSW_CHECK(target > 0.0, "split needs v+ > 0 for agent " + std::to_string(i));
    for (size_t c = 0; c < x.columns[i].size(); ++c) {
      const Column& col = x.columns[i][c];
      if (col.weight <= 0.0 || col.set.empty()) continue;
      const double value = v.Value(col.set);
      if (value < target - Slack(target)) continue;
      const ClauseResult clause = v.XosClause(col.set);
      const std::span<const double> f = clause.weights;
      int large = col.set.First();
      for (int j : col.set) {
        if (f[j] > f[large]) large = j;
      }
      const int k = std::max(1, static_cast<int>(std::floor(4.0 * value / v_plus[i] + 1e-12)));
      std::vector<int> order = (col.set - ItemSet::Singleton(large)).ToVector();
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return f[a] > f[b]; });
      std::vector<ItemSet> parts;
      ItemSet open;
      double open_value = f[large];
      for (int j : order) {
        if (static_cast<int>(parts.size()) == k - 1) {
          open.Insert(j);
          continue;
        }
        open.Insert(j);
        open_value += f[j];
        if (open_value > target + Slack(target)) {
          parts.push_back(open);
          open = ItemSet();
          open_value = f[large];
        }
      }
      if (static_cast<int>(parts.size()) < k) {
        parts.push_back(open);
      } else {
        parts.back() = parts.back() | open;
      }
      // Items ran out before k parts closed; only possible when f(l) alone
      // meets the target, so the remaining parts are empty.
      while (static_cast<int>(parts.size()) < k) parts.emplace_back();
      NSW_CHECK(static_cast<int>(parts.size()) == k,
                "greedy split produced " + std::to_string(parts.size()) +
                    " parts instead of " + std::to_string(k) + " for agent " +
                    std::to_string(i));
      for (ItemSet part : parts) {
        double fv = f[large];
        for (int j : part) fv += f[j];
        NSW_CHECK(fv >= target - Slack(target),
                  "split part below v+/4 for " + Where(i, part));
        out.config.columns[i].push_back({part, 0.75 * col.weight});
        out.large_item[i].push_back(large);
        out.source[i].push_back(static_cast<int>(c));
      }
    }
    NSW_CHECK(!out.config.columns[i].empty(),
              "no support set reaches v+/4 for agent " + std::to_string(i));
  }
  const std::string problem = CheckXosSplit(out, inst);
  NSW_CHECK(problem.empty(), problem);
  return out;
}

std::string CheckXosSplit(const XosSplitOutput& out, const Instance& inst,
                          double tol) {
  const int m = inst.num_items();
  for (int i = 0; i < inst.num_agents(); ++i) {
    const auto& cols = out.config.columns[i];
    if (cols.empty()) continue;
    const double target = 0.25 * out.v_plus[i];
    double mass = 0.0;
    for (size_t c = 0; c < cols.size(); ++c) {
      mass += cols[c].weight;
      const int l = out.large_item[i][c];
      if (cols[c].set.Contains(l)) {
        return "large item " + std::to_string(l) + " inside " + Where(i, cols[c].set);
      }
      ItemSet with_l = cols[c].set;
      with_l.Insert(l);
      if (inst.valuation(i).Value(with_l) < target - tol) {
        return "v(T + l) < v+/4 for " + Where(i, cols[c].set);
      }
    }
    if (mass < 1.0 - tol || mass > 3.0 + tol) {
      return "agent " + std::to_string(i) + " split mass " + std::to_string(mass) +
             " outside [1, 3]";
    }
  }
  const std::vector<double> load = out.config.ItemLoads(m);
  for (int j = 0; j < m; ++j) {
    if (load[j] > 0.75 + tol) {
      return "item " + std::to_string(j) + " split load " + std::to_string(load[j]) +
             " exceeds 3/4";
    }
  }
  return "";
}

SubaddSplitOutput SplitSubadditive(const ConfigSolution& x, const Instance& inst,
                                   const std::vector<int>& agents,
                                   const std::vector<double>& v,
                                   const std::vector<double>& nu) {
  const int n = inst.num_agents();
  SubaddSplitOutput out;
  out.config = ConfigSolution(n);
  out.v = v;
  out.nu = nu;
  out.agents = agents;
  for (int i : agents) {
    const Valuation& val = inst.valuation(i);
    const double big_v = v[i];
    NSW_CHECK(big_v > 0.0, "split needs V > 0 for agent " + std::to_string(i));
    NSW_REQUIRE(big_v >= 6.0 * nu[i] - 1e-12 * big_v,
                "split needs V >= 6 nu (agent " + std::to_string(i) + ")");
    const double keep = big_v / 3.0;
    const double part_floor = keep - nu[i];
    std::vector<Column> parts_out;
    double total = 0.0;
    for (const Column& col : x.columns[i]) {
      if (col.weight <= 0.0 || col.set.empty()) continue;
      const double value = val.Value(col.set);
      if (value < keep - Slack(keep)) continue;
      const int k = std::max(1, static_cast<int>(std::floor(3.0 * value / big_v + 1e-12)));
      std::vector<ItemSet> parts;
      ItemSet open;
      for (int j : col.set) {
        open.Insert(j);
        if (static_cast<int>(parts.size()) < k - 1 &&
            val.Value(open) > part_floor + Slack(keep)) {
          parts.push_back(open);
          open = ItemSet();
        }
      }
      if (!open.empty() || static_cast<int>(parts.size()) < k) parts.push_back(open);
      NSW_CHECK(static_cast<int>(parts.size()) == k,
                "greedy split produced " + std::to_string(parts.size()) +
                    " parts instead of " + std::to_string(k) + " for agent " +
                    std::to_string(i) + "; the valuation is not subadditive");
      for (ItemSet& part : parts) {
        while (val.Value(part) > big_v) {
          int drop = part.First();
          for (int j : part) {
            if (val.Singleton(j) < val.Singleton(drop)) drop = j;
          }
          part.Erase(drop);
        }
        NSW_CHECK(!part.empty() && val.Value(part) >= part_floor - Slack(keep),
                  "split part below V/3 - nu for " + Where(i, part) +
                      "; the valuation is not subadditive");
        auto same = std::find_if(parts_out.begin(), parts_out.end(),
                                 [&](const Column& c) { return c.set == part; });
        if (same == parts_out.end()) {
          parts_out.push_back({part, col.weight});
        } else {
          same->weight += col.weight;
        }
        total += col.weight;
      }
    }
    NSW_CHECK(total >= 1.0 - 1e-9,
              "split mass " + std::to_string(total) + " below 1 for agent " +
                  std::to_string(i));
    for (Column& c : parts_out) c.weight /= total;
    out.config.columns[i] = std::move(parts_out);
  }
  const std::string problem = CheckSubaddSplit(out, inst);
  NSW_CHECK(problem.empty(), problem);
  return out;
}

std::string CheckSubaddSplit(const SubaddSplitOutput& out, const Instance& inst,
                             double tol) {
  const int m = inst.num_items();
  for (int i : out.agents) {
    double mass = 0.0;
    for (const Column& c : out.config.columns[i]) {
      mass += c.weight;
      const double value = inst.valuation(i).Value(c.set);
      if (value < out.v[i] / 3.0 - out.nu[i] - tol || value > out.v[i] + tol) {
        return "v(T) outside [V/3 - nu, V] for " + Where(i, c.set);
      }
    }
    if (std::abs(mass - 1.0) > tol) {
      return "agent " + std::to_string(i) + " split mass " + std::to_string(mass) +
             " is not 1";
    }
  }
  const std::vector<double> load = out.config.ItemLoads(m);
  for (int j = 0; j < m; ++j) {
    if (load[j] > 1.0 + tol) {
      return "item " + std::to_string(j) + " split load " + std::to_string(load[j]) +
             " exceeds 1";
    }
  }
  return "";
}

}  // namespace nsw
