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

#include "nsw/relaxation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "nsw/errors.h"
#include "nsw/lp.h"
#include "nsw/oracle.h"

namespace nsw {
namespace {

constexpr int kMaxEnumeratedSupport = 20;
constexpr double kWeightFloor = 1e-15;

// Nested decomposition of an additive extension: the top-k items by x get
// weight x_(k) - x_(k+1).
ConcaveExtValue AdditiveExt(const Additive& a, std::span<const double> x) {
  ConcaveExtValue out;
  out.p = a.weights;
  std::vector<int> order;
  for (size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0.0) order.push_back(static_cast<int>(j));
    out.value += a.weights[j] * x[j];
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return x[i] > x[j]; });
  ItemSet top;
  double used = 0.0;
  for (size_t k = 0; k < order.size(); ++k) {
    top.Insert(order[k]);
    const double next = k + 1 < order.size() ? x[order[k + 1]] : 0.0;
    const double w = x[order[k]] - next;
    if (w > kWeightFloor) {
      out.columns.push_back({top, w});
      used += w;
    }
  }
  if (1.0 - used > kWeightFloor) out.columns.push_back({ItemSet(), 1.0 - used});
  out.gap = 0.0;
  return out;
}

}  // namespace

double ConcaveExtValue::DualValue(std::span<const double> x) const {
  double total = q;
  for (size_t j = 0; j < x.size(); ++j) total += p[j] * x[j];
  return total;
}

ConcaveExtValue ConcaveExt(const Valuation& v, std::span<const double> x,
                           const ConcaveExtOptions& options,
                           std::vector<ItemSet>* pool) {
  const int m = v.num_items();
  NSW_REQUIRE(static_cast<int>(x.size()) == m, "x must have one entry per item");
  ItemSet support;
  for (int j = 0; j < m; ++j) {
    NSW_REQUIRE(x[j] >= -1e-12 && x[j] <= 1.0 + 1e-9, "x must lie in [0,1]");
    if (x[j] > 0.0) support.Insert(j);
  }
  if (const auto* a = v.as_additive()) return AdditiveExt(*a, x);

  ConcaveExtValue out;
  out.p.assign(m, 0.0);
  for (int j = 0; j < m; ++j) out.p[j] = v.Singleton(j);
  if (support.empty()) {
    out.columns.push_back({ItemSet(), 1.0});
    return out;
  }

  const std::vector<int> items = support.ToVector();
  const int r = static_cast<int>(items.size());
  std::vector<int> row_of(m, -1);
  std::vector<double> rhs(r + 1, 1.0);
  for (int k = 0; k < r; ++k) {
    row_of[items[k]] = k;
    rhs[k] = std::min(x[items[k]], 1.0);
  }
  const double tol = options.tol * (1.0 + v.Value(support));

  PackingLp lp(rhs);
  std::vector<ItemSet> cols;
  std::unordered_set<uint64_t> seen;
  auto add = [&](ItemSet s) {
    s = s & support;
    if (s.empty() || !seen.insert(s.bits()).second) return false;
    const double value = v.Value(s);
    if (value <= 0.0) return false;
    std::vector<std::pair<int, double>> entries;
    for (int j : s) entries.emplace_back(row_of[j], 1.0);
    entries.emplace_back(r, 1.0);
    lp.AddColumn(value, std::move(entries));
    cols.push_back(s);
    return true;
  };

  if (options.enumerate) {
    if (r > kMaxEnumeratedSupport) {
      throw CapExceeded("concave extension enumeration over a support of " +
                        std::to_string(r) + " items exceeds cap " +
                        std::to_string(kMaxEnumeratedSupport));
    }
    for (uint64_t local = 1; local < (uint64_t{1} << r); ++local) {
      ItemSet s;
      for (int k = 0; k < r; ++k) {
        if ((local >> k) & 1u) s.Insert(items[k]);
      }
      add(s);
    }
  } else {
    add(support);
    for (int j : items) add(ItemSet::Singleton(j));
    if (pool != nullptr) {
      for (ItemSet s : *pool) add(s);
    }
  }

  LpResult res;
  std::vector<double> prices = out.p;
  while (true) {
    res = lp.Solve();
    NSW_CHECK(res.status == LpStatus::kOptimal,
              "concave extension LP did not reach optimality");
    ++out.rounds;
    for (int k = 0; k < r; ++k) prices[items[k]] = res.dual[k];
    const double q = res.dual[r];

    double best_util = 0.0;
    ItemSet best_set;
    if (options.enumerate) {
      for (ItemSet s : cols) {
        double u = v.Value(s);
        for (int j : s) u -= prices[j];
        if (u > best_util) {
          best_util = u;
          best_set = s;
        }
      }
    } else {
      const DemandResult d = v.Demand(prices);
      best_util = d.utility;
      best_set = d.set;
    }
    out.q = std::max(q, best_util);
    if (best_util <= q + tol) break;
    if (out.rounds >= options.max_rounds || !add(best_set)) {
      out.converged = false;
      break;
    }
  }

  out.p = prices;
  out.value = res.objective;
  double used = 0.0;
  for (size_t c = 0; c < cols.size(); ++c) {
    if (res.primal[c] > kWeightFloor) {
      out.columns.push_back({cols[c], res.primal[c]});
      used += res.primal[c];
    }
  }
  if (1.0 - used > kWeightFloor) out.columns.push_back({ItemSet(), 1.0 - used});
  out.gap = out.DualValue(x) - out.value;

  if (pool != nullptr) {
    for (const Column& c : out.columns) {
      if (!c.set.empty() &&
          std::find(pool->begin(), pool->end(), c.set) == pool->end()) {
        pool->push_back(c.set);
      }
    }
    // Keep the most recent columns only.
    constexpr size_t kPoolCap = 256;
    if (pool->size() > kPoolCap) {
      pool->erase(pool->begin(), pool->end() - kPoolCap);
    }
  }
  return out;
}

Supergradient SupergradientLog(const ConcaveExtValue& ext,
                               std::span<const double> x) {
  const double denom = ext.DualValue(x);
  NSW_REQUIRE(denom > 0.0, "supergradient of log v+ needs v+(x) > 0");
  Supergradient g;
  g.base = std::log(denom);
  g.grad.resize(ext.p.size());
  for (size_t j = 0; j < ext.p.size(); ++j) g.grad[j] = ext.p[j] / denom;
  return g;
}

Supergradient SupergradientLog(const Valuation& v, std::span<const double> x) {
  return SupergradientLog(ConcaveExt(v, x), x);
}

double CorollaryEpsilon(double alpha, int num_agents) {
  return alpha / (2.0 + (1.0 + alpha) * num_agents);
}

std::vector<double> ProjectCappedSimplex(std::vector<double> z, double floor) {
  const int n = static_cast<int>(z.size());
  const double cap = 1.0 - n * floor;
  NSW_REQUIRE(cap >= 0.0, "epsilon floor leaves no room in the simplex");
  double clipped = 0.0;
  for (double& w : z) {
    w -= floor;
    clipped += std::max(w, 0.0);
  }
  if (clipped <= cap) {
    for (double& w : z) w = std::max(w, 0.0) + floor;
    return z;
  }
  std::vector<double> u = z;
  std::sort(u.begin(), u.end(), std::greater<>());
  double prefix = 0.0, theta = 0.0;
  for (int k = 0; k < n; ++k) {
    prefix += u[k];
    const double t = (prefix - cap) / (k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  for (double& w : z) w = std::max(w - theta, 0.0) + floor;
  return z;
}

EgResult SolveEg(const Instance& inst, const std::vector<int>& agents,
                 ItemSet universe, const EgParams& params) {
  const int n = inst.num_agents();
  const int m = inst.num_items();
  const int k = static_cast<int>(agents.size());
  const std::vector<int> items = universe.ToVector();
  const int u = static_cast<int>(items.size());
  NSW_REQUIRE(k >= 1, "relaxation needs at least one agent");
  NSW_REQUIRE(u >= 1, "relaxation needs at least one item");
  for (int i : agents) {
    NSW_CHECK(inst.valuation(i).Value(universe) > 0.0,
              "agent " + std::to_string(i) + " has no value for the relaxation items");
  }
  EgResult out;
  out.epsilon = params.epsilon > 0.0 ? params.epsilon
                                     : CorollaryEpsilon(params.alpha, k);
  NSW_REQUIRE(out.epsilon * k <= 1.0, "epsilon floor exceeds 1/|agents|");
  const double gap_tol = params.gap_tol >= 0.0
                             ? params.gap_tol
                             : std::pow(out.epsilon, 4) * k;
  ConcaveExtOptions ext_opts;
  ext_opts.enumerate = params.enumerate_extension;

  // x[a][t]: agent agents[a], item items[t].
  std::vector<std::vector<double>> x(k, std::vector<double>(u, 1.0 / k));
  std::vector<std::vector<ItemSet>> pools(k);
  std::vector<double> full(m);

  struct Eval {
    double objective = 0.0;
    std::vector<ConcaveExtValue> ext;
    std::vector<std::vector<double>> grad;
  };
  auto evaluate = [&](const std::vector<std::vector<double>>& at) {
    Eval e;
    e.ext.resize(k);
    e.grad.assign(k, std::vector<double>(u));
    for (int a = 0; a < k; ++a) {
      std::fill(full.begin(), full.end(), 0.0);
      for (int t = 0; t < u; ++t) full[items[t]] = at[a][t];
      e.ext[a] = ConcaveExt(inst.valuation(agents[a]), full, ext_opts, &pools[a]);
      NSW_CHECK(e.ext[a].value > 0.0, "v+ vanished inside the relaxation");
      e.objective += std::log(e.ext[a].value);
      const Supergradient g = SupergradientLog(e.ext[a], full);
      for (int t = 0; t < u; ++t) e.grad[a][t] = g.grad[items[t]];
    }
    return e;
  };
  auto fw_gap = [&](const std::vector<std::vector<double>>& at, const Eval& e) {
    double gap = 0.0;
    for (int t = 0; t < u; ++t) {
      int best = 0;
      for (int a = 1; a < k; ++a) {
        if (e.grad[a][t] > e.grad[best][t]) best = a;
      }
      for (int a = 0; a < k; ++a) {
        const double y = a == best ? 1.0 - (k - 1) * out.epsilon : out.epsilon;
        gap += e.grad[a][t] * (y - at[a][t]);
      }
    }
    return gap;
  };

  Eval cur = evaluate(x);
  std::vector<std::vector<double>> best_x = x;
  Eval best = cur;
  out.stop_reason = "max_iterations";
  int last_improve = 0;
  int t = 0;
  for (t = 1; t <= params.max_iterations; ++t) {
    if (t == 1 || cur.objective > best.objective +
                                      params.improve_tol * (1.0 + std::abs(best.objective))) {
      if (t > 1) {
        best = cur;
        best_x = x;
      }
      last_improve = t;
      if (fw_gap(x, cur) <= gap_tol) {
        out.stop_reason = "gap";
        break;
      }
    }
    if (t - last_improve >= params.patience) {
      out.stop_reason = "patience";
      break;
    }
    double norm = 0.0;
    for (const auto& row : cur.grad) {
      for (double g : row) norm += g * g;
    }
    norm = std::sqrt(norm);
    if (norm <= 0.0) {
      out.stop_reason = "zero_gradient";
      break;
    }
    const double eta = params.step0 / std::sqrt(static_cast<double>(t));
    std::vector<double> col(k);
    for (int j = 0; j < u; ++j) {
      for (int a = 0; a < k; ++a) col[a] = x[a][j] + eta * cur.grad[a][j] / norm;
      col = ProjectCappedSimplex(std::move(col), out.epsilon);
      for (int a = 0; a < k; ++a) x[a][j] = col[a];
    }
    cur = evaluate(x);
  }
  out.iterations = std::min(t, params.max_iterations);

  out.x = ItemFractional(n, m);
  out.ext.assign(n, ConcaveExtValue());
  out.v_plus.assign(n, 0.0);
  out.objective = best.objective;
  out.fw_gap = fw_gap(best_x, best);
  out.ratio_bound = k;
  for (int a = 0; a < k; ++a) {
    const int i = agents[a];
    for (int t2 = 0; t2 < u; ++t2) {
      out.x.mass[i][items[t2]] = best_x[a][t2];
      out.ratio_bound -= best.grad[a][t2] * best_x[a][t2];
    }
    out.ext[i] = best.ext[a];
    out.v_plus[i] = best.ext[a].value;
  }
  for (int t2 = 0; t2 < u; ++t2) {
    double g = 0.0;
    for (int a = 0; a < k; ++a) g = std::max(g, best.grad[a][t2]);
    out.ratio_bound += g;
  }
  return out;
}

ScaledCheck ScaledOptimumCheck(const EgResult& eg, const Instance& inst,
                               const std::vector<int>& agents, ItemSet universe,
                               double alpha) {
  std::vector<double> scale(inst.num_agents(), 0.0);
  for (int i : agents) scale[i] = eg.v_plus[i];
  ScaledCheck out;
  out.ratio = ExactConfigLp(inst, agents, universe, scale).optimum;
  out.limit = (1.0 + alpha) * static_cast<double>(agents.size());
  out.pass = out.ratio <= out.limit + 1e-6;
  return out;
}

}  // namespace nsw
