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

#include "nsw/valuation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "nsw/errors.h"

namespace nsw {
namespace {

double SumOver(std::span<const double> w, ItemSet s) {
  double total = 0.0;
  for (int j : s) total += w[j];
  return total;
}

// All 2^m subset sums of `w`, built from the lowest set bit.
std::vector<double> SubsetSums(std::span<const double> w, int m) {
  std::vector<double> sums(size_t{1} << m, 0.0);
  for (uint64_t mask = 1; mask < sums.size(); ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + w[low];
  }
  return sums;
}

}  // namespace

std::string KindName(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive:
      return "additive";
    case ValuationKind::kXos:
      return "xos";
    case ValuationKind::kBudgetedAdditive:
      return "budgeted_additive";
    case ValuationKind::kTable:
      return "table";
  }
  return "unknown";
}

std::string StatusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
    case CheckStatus::kNotApplicable:
      return "n/a";
  }
  return "unknown";
}

Valuation::Valuation(Additive a)
    : num_items_(static_cast<int>(a.weights.size())) {
  rep_ = std::move(a);
}

Valuation::Valuation(Xos x) {
  NSW_REQUIRE(!x.clauses.empty(), "xos valuation needs at least one clause");
  num_items_ = static_cast<int>(x.clauses.front().size());
  for (const auto& c : x.clauses) {
    NSW_REQUIRE(static_cast<int>(c.size()) == num_items_,
                "xos clauses must all have one weight per item");
  }
  rep_ = std::move(x);
}

Valuation::Valuation(BudgetedAdditive b)
    : num_items_(static_cast<int>(b.weights.size())) {
  rep_ = std::move(b);
}

Valuation::Valuation(ExplicitTable t) : num_items_(t.num_items) {
  NSW_REQUIRE(t.num_items >= 0 && t.num_items <= kEnumerationCap,
              "explicit table supports at most 16 items");
  NSW_REQUIRE(t.values.size() == (size_t{1} << t.num_items),
              "explicit table must list all 2^m subsets");
  rep_ = std::move(t);
}

ValuationKind Valuation::kind() const {
  return static_cast<ValuationKind>(rep_.index());
}

double Valuation::Value(ItemSet s) const {
  switch (kind()) {
    case ValuationKind::kAdditive:
      return SumOver(as_additive()->weights, s);
    case ValuationKind::kXos: {
      double best = 0.0;
      for (const auto& c : as_xos()->clauses) best = std::max(best, SumOver(c, s));
      return best;
    }
    case ValuationKind::kBudgetedAdditive: {
      const auto* b = as_budgeted();
      return std::min(SumOver(b->weights, s), b->cap);
    }
    case ValuationKind::kTable:
      return as_table()->values[s.bits()];
  }
  return 0.0;
}

DemandResult Valuation::Demand(std::span<const double> prices) const {
  NSW_REQUIRE(static_cast<int>(prices.size()) == num_items_,
              "price vector length must equal the item count");
  switch (kind()) {
    case ValuationKind::kAdditive: {
      const auto& w = as_additive()->weights;
      DemandResult r;
      for (int j = 0; j < num_items_; ++j) {
        if (w[j] > prices[j]) {
          r.set.Insert(j);
          r.utility += w[j] - prices[j];
        }
      }
      return r;
    }
    case ValuationKind::kXos: {
      // The optimum is attained by the positive-margin set of some clause.
      DemandResult best;
      bool have = false;
      for (const auto& c : as_xos()->clauses) {
        ItemSet s;
        for (int j = 0; j < num_items_; ++j) {
          if (c[j] > prices[j]) s.Insert(j);
        }
        const double u = Value(s) - SumOver(prices, s);
        if (!have || u > best.utility ||
            (u == best.utility && LexLess(s, best.set))) {
          best = {s, u};
          have = true;
        }
      }
      return best;
    }
    case ValuationKind::kBudgetedAdditive:
    case ValuationKind::kTable:
      return EnumeratedDemand(prices);
  }
  return {};
}

DemandResult Valuation::EnumeratedDemand(std::span<const double> prices) const {
  if (num_items_ > kEnumerationCap) {
    throw CapExceeded("demand oracle for " + KindName(kind()) +
                      " enumerates subsets; item count " +
                      std::to_string(num_items_) + " exceeds cap " +
                      std::to_string(kEnumerationCap));
  }
  const std::vector<double> price_sums = SubsetSums(prices, num_items_);
  std::vector<double> weight_sums;
  if (const auto* b = as_budgeted()) weight_sums = SubsetSums(b->weights, num_items_);
  DemandResult best{ItemSet(), Value(ItemSet())};
  for (uint64_t mask = 1; mask < price_sums.size(); ++mask) {
    const double v = weight_sums.empty()
                         ? as_table()->values[mask]
                         : std::min(weight_sums[mask], as_budgeted()->cap);
    const double u = v - price_sums[mask];
    const ItemSet s(mask);
    if (u > best.utility || (u == best.utility && LexLess(s, best.set))) {
      best = {s, u};
    }
  }
  return best;
}

ClauseResult Valuation::XosClause(ItemSet s) const {
  if (const auto* a = as_additive()) {
    return {0, a->weights, SumOver(a->weights, s)};
  }
  const auto* x = as_xos();
  NSW_REQUIRE(x != nullptr, "xos clause oracle called on a " +
                                KindName(kind()) + " valuation");
  ClauseResult best{0, x->clauses[0], SumOver(x->clauses[0], s)};
  for (size_t c = 1; c < x->clauses.size(); ++c) {
    const double val = SumOver(x->clauses[c], s);
    if (val > best.value) best = {static_cast<int>(c), x->clauses[c], val};
  }
  return best;
}

double Valuation::SingletonMax(ItemSet u) const {
  double best = 0.0;
  for (int j : u) best = std::max(best, Singleton(j));
  return best;
}

Valuation Valuation::Scaled(double factor) const {
  switch (kind()) {
    case ValuationKind::kAdditive: {
      Additive a = *as_additive();
      for (double& w : a.weights) w *= factor;
      return a;
    }
    case ValuationKind::kXos: {
      Xos x = *as_xos();
      for (auto& c : x.clauses) {
        for (double& w : c) w *= factor;
      }
      return x;
    }
    case ValuationKind::kBudgetedAdditive: {
      BudgetedAdditive b = *as_budgeted();
      for (double& w : b.weights) w *= factor;
      b.cap *= factor;
      return b;
    }
    case ValuationKind::kTable: {
      ExplicitTable t = *as_table();
      for (double& v : t.values) v *= factor;
      return t;
    }
  }
  return *this;
}

ValidationReport ValidateValuation(const Valuation& v, int num_items, int cap,
                                   double tol) {
  ValidationReport r;
  if (v.num_items() != num_items) {
    r.zero_at_empty = false;
    r.message = "valuation is defined over " + std::to_string(v.num_items()) +
                " items, expected " + std::to_string(num_items);
    return r;
  }
  r.zero_at_empty = std::abs(v.Value(ItemSet())) <= tol;
  if (!r.zero_at_empty) r.message = "v(empty) is not zero";

  if (const auto* x = v.as_xos()) {
    r.xos_consistent = CheckStatus::kPass;
    for (const auto& c : x->clauses) {
      for (double w : c) {
        if (!std::isfinite(w) || w < 0.0) r.xos_consistent = CheckStatus::kFail;
      }
    }
    if (r.xos_consistent == CheckStatus::kFail) {
      r.message = "xos clause has a negative or non-finite weight";
    }
  }

  if (num_items > cap) {
    r.message += r.message.empty() ? "" : "; ";
    r.message += "exhaustive checks skipped: " + std::to_string(num_items) +
                 " items exceed cap " + std::to_string(cap);
    return r;
  }

  const uint64_t count = uint64_t{1} << num_items;
  std::vector<double> values(count);
  for (uint64_t mask = 0; mask < count; ++mask) values[mask] = v.Value(ItemSet(mask));

  r.monotone = CheckStatus::kPass;
  for (uint64_t mask = 0; mask < count && r.monotone == CheckStatus::kPass;
       ++mask) {
    for (int j = 0; j < num_items; ++j) {
      if ((mask >> j) & 1u) continue;
      if (values[mask | (uint64_t{1} << j)] < values[mask] - tol) {
        r.monotone = CheckStatus::kFail;
        r.monotone_set = ItemSet(mask);
        r.monotone_item = j;
        break;
      }
    }
  }

  // Disjoint pairs (S, U \ S) with S holding the lowest member of U.
  r.subadditive = CheckStatus::kPass;
  for (uint64_t u = 1; u < count && r.subadditive == CheckStatus::kPass; ++u) {
    const uint64_t low = u & (~u + 1);
    const uint64_t rest = u ^ low;
    // Submasks of `rest` in ascending order.
    uint64_t sub = 0;
    while (true) {
      const uint64_t s = sub | low;
      const uint64_t t = u ^ s;
      if (t != 0 && values[u] > values[s] + values[t] + tol) {
        r.subadditive = CheckStatus::kFail;
        r.subadditive_s = ItemSet(s);
        r.subadditive_t = ItemSet(t);
        break;
      }
      if (sub == rest) break;
      sub = (sub - rest) & rest;
    }
  }

  if (r.xos_consistent == CheckStatus::kPass) {
    // Each clause must underestimate v everywhere and XosClause(S) must be
    // tight on S.
    for (const auto& c : v.as_xos()->clauses) {
      for (uint64_t mask = 0; mask < count; ++mask) {
        if (SumOver(c, ItemSet(mask)) > values[mask] + tol) {
          r.xos_consistent = CheckStatus::kFail;
        }
      }
    }
    for (uint64_t mask = 0; mask < count; ++mask) {
      if (std::abs(v.XosClause(ItemSet(mask)).value - values[mask]) > tol) {
        r.xos_consistent = CheckStatus::kFail;
      }
    }
  }

  auto append = [&r](const std::string& s) {
    r.message += r.message.empty() ? "" : "; ";
    r.message += s;
  };
  if (r.monotone == CheckStatus::kFail) {
    append("not monotone: adding item " + std::to_string(r.monotone_item) +
           " to {" + r.monotone_set.ToString() + "} lowers the value");
  }
  if (r.subadditive == CheckStatus::kFail) {
    append("subadditivity violated for S={" + r.subadditive_s.ToString() +
           "}, T={" + r.subadditive_t.ToString() + "}");
  }
  if (r.xos_consistent == CheckStatus::kFail && r.message.find("xos") == std::string::npos) {
    append("xos clause representation is inconsistent");
  }
  return r;
}

}  // namespace nsw
