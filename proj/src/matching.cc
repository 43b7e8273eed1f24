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

#include "nsw/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "nsw/errors.h"

namespace nsw {
namespace {

// Min-cost assignment of rows to columns (rows <= cols), O(n^2 m).
// Returns the column of each row.
std::vector<int> Hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const int m = n == 0 ? 0 : static_cast<int>(cost[0].size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of[p[j] - 1] = j - 1;
  }
  return col_of;
}

double LogOrNegInf(double x) {
  return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
}

}  // namespace

MatchingObjective EvaluateMatching(const MatchingProblem& prob,
                                   const std::vector<int>& slot_of) {
  MatchingObjective obj;
  for (size_t i = 0; i < slot_of.size(); ++i) {
    if (slot_of[i] < 0) continue;
    const double s = prob.score[i][slot_of[i]];
    if (s > 0.0) {
      ++obj.positive;
      obj.log_sum += std::log(s);
    }
  }
  return obj;
}

Matching ProductMatching(const MatchingProblem& prob) {
  const int n = static_cast<int>(prob.score.size());
  const int k = static_cast<int>(prob.items.size());
  NSW_REQUIRE(k >= n, "matching needs at least as many items as agents (" +
                          std::to_string(k) + " < " + std::to_string(n) + ")");
  double span = 0.0;
  for (const auto& row : prob.score) {
    NSW_REQUIRE(static_cast<int>(row.size()) == k, "score row has wrong length");
    for (double s : row) {
      NSW_REQUIRE(std::isfinite(s) && s >= 0.0, "scores must be finite and >= 0");
      if (s > 0.0) span = std::max(span, std::abs(std::log(s)));
    }
  }
  // One more positive pair always outweighs any log-sum difference.
  const double big = 2.0 * (n + 1) * (span + 1.0);
  std::vector<std::vector<double>> cost(n, std::vector<double>(k, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const double s = prob.score[i][j];
      cost[i][j] = s > 0.0 ? -(big + std::log(s)) : 0.0;
    }
  }
  std::vector<int> slot_of = Hungarian(cost);

  std::vector<char> taken(k, 0);
  std::vector<int> idle;
  for (int i = 0; i < n; ++i) {
    if (prob.score[i][slot_of[i]] > 0.0) {
      taken[slot_of[i]] = 1;
    } else {
      idle.push_back(i);
    }
  }
  std::vector<int> free_slots;
  for (int j = 0; j < k; ++j) {
    if (!taken[j]) free_slots.push_back(j);
  }
  std::sort(free_slots.begin(), free_slots.end(),
            [&](int a, int b) { return prob.items[a] < prob.items[b]; });
  for (size_t t = 0; t < idle.size(); ++t) slot_of[idle[t]] = free_slots[t];

  Matching out(n);
  for (int i = 0; i < n; ++i) out.item_of[i] = prob.items[slot_of[i]];
  NSW_CHECK(out.IsInjective(), "product matching is not injective");
  return out;
}

InitialMatching ComputeInitialMatching(const Instance& inst) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  NSW_REQUIRE(m >= n, "instance has fewer items than agents (" +
                          std::to_string(m) + " < " + std::to_string(n) + ")");
  MatchingProblem prob;
  for (int j = 0; j < m; ++j) prob.items.push_back(j);
  prob.score.assign(n, std::vector<double>(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) prob.score[i][j] = inst.valuation(i).Singleton(j);
  }
  InitialMatching out;
  out.tau = ProductMatching(prob);
  out.h = out.tau.Range();
  out.rest = inst.all_items() - out.h;
  for (int i = 0; i < n; ++i) {
    const Valuation& v = inst.valuation(i);
    if (v.Value(out.rest) > 0.0) out.active.push_back(i);
    const double own = v.Singleton(out.tau.item_of[i]);
    if (own <= 0.0) continue;
    for (int j : out.rest) {
      NSW_CHECK(v.Singleton(j) <= own * (1.0 + 1e-12),
                "initial matching is not swap-optimal for agent " +
                    std::to_string(i));
    }
  }
  return out;
}

Rematch RematchRho(const Matching& tau, const Matching& pi,
                   const std::vector<double>& w, const std::vector<double>& nu,
                   const Instance& inst) {
  const int n = inst.num_agents();
  NSW_REQUIRE(static_cast<int>(tau.item_of.size()) == n &&
                  static_cast<int>(pi.item_of.size()) == n,
              "matchings must cover every agent");
  NSW_REQUIRE(tau.IsInjective() && pi.IsInjective(), "matchings must be injective");
  const ItemSet h = tau.Range();
  std::map<int, int> owner;  // tau item -> agent
  for (int i = 0; i < n; ++i) {
    NSW_REQUIRE(tau.item_of[i] != Matching::kUnmatched, "tau must match every agent");
    NSW_REQUIRE(pi.item_of[i] != Matching::kUnmatched && h.Contains(pi.item_of[i]),
                "pi must map into the range of tau");
    owner[tau.item_of[i]] = i;
  }

  Rematch out;
  out.rho = Matching(n);
  std::vector<double> pi_val(n);
  std::vector<char> in_tilde(n, 0), in_nu(n, 0);
  for (int i = 0; i < n; ++i) {
    pi_val[i] = inst.valuation(i).Singleton(pi.item_of[i]);
    if (w[i] < std::max(pi_val[i], nu[i])) {
      in_tilde[i] = 1;
      out.tilde.push_back(i);
      if (nu[i] > pi_val[i]) {
        in_nu[i] = 1;
        out.a_nu.push_back(i);
      }
    }
  }

  // Out-degrees are at most one: i -> pi(i) -> the tilde agent owning it
  // under tau. Follow the chain until it reaches A_nu, leaves tilde, or
  // cycles.
  std::vector<char> in_tau(n, 0);
  for (int i : out.tilde) {
    std::vector<char> seen(n, 0);
    int cur = i;
    while (true) {
      if (in_nu[cur]) {
        in_tau[i] = 1;
        break;
      }
      seen[cur] = 1;
      auto it = owner.find(pi.item_of[cur]);
      if (it == owner.end()) break;
      const int next = it->second;
      if (!in_tilde[next] || seen[next]) break;
      cur = next;
    }
    if (in_tau[i]) out.a_tau.push_back(i);
  }

  ItemSet used;
  for (int i : out.tilde) {
    const int item = in_tau[i] ? tau.item_of[i] : pi.item_of[i];
    NSW_CHECK(!used.Contains(item),
              "rematching assigned item " + std::to_string(item) + " twice");
    used.Insert(item);
    out.rho.item_of[i] = item;
  }
  ItemSet spare = h - used;
  for (int i = 0; i < n; ++i) {
    if (in_tilde[i]) continue;
    const int item = spare.First();
    spare.Erase(item);
    out.rho.item_of[i] = item;
  }
  NSW_CHECK(out.rho.IsInjective(), "rematching is not injective");
  return out;
}

bool RematchGuaranteeHolds(const Matching& rho, const Matching& pi,
                           const std::vector<double>& w,
                           const std::vector<double>& nu, const Instance& inst,
                           double tol) {
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    const Valuation& v = inst.valuation(i);
    lhs += LogOrNegInf(std::max(w[i], v.Singleton(rho.item_of[i])));
    rhs += LogOrNegInf(std::max({w[i], v.Singleton(pi.item_of[i]), nu[i]}));
  }
  if (std::isinf(rhs)) return true;
  if (std::isinf(lhs)) return false;
  return lhs >= rhs - tol * (1.0 + std::abs(rhs));
}

Matching ExtensionPi(const Allocation& s_star, const Matching& tau,
                     const Instance& inst) {
  const int n = inst.num_agents();
  const ItemSet h = tau.Range();
  Matching pi(n);
  ItemSet used;
  for (int i = 0; i < n; ++i) {
    const ItemSet mine = s_star.bundles[i] & h;
    if (mine.empty()) continue;
    int best = mine.First();
    for (int j : mine) {
      if (inst.valuation(i).Singleton(j) > inst.valuation(i).Singleton(best)) best = j;
    }
    pi.item_of[i] = best;
    used.Insert(best);
  }
  ItemSet spare = h - used;
  for (int i = 0; i < n; ++i) {
    if (pi.item_of[i] != Matching::kUnmatched) continue;
    const int item = spare.First();
    spare.Erase(item);
    pi.item_of[i] = item;
  }
  return pi;
}

}  // namespace nsw
