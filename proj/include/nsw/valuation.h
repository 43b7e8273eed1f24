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

// Valuation families and their value, demand and XOS-clause oracles.
//
// Every family is a monotone set function with v(empty) = 0 over a dense
// item universe of at most ItemSet::kMaxItems items. Families without an
// analytic demand oracle (budgeted-additive, explicit table) answer demand
// queries by exhaustive enumeration and are therefore limited to
// kEnumerationCap items for that query.

#ifndef NSW_VALUATION_H_
#define NSW_VALUATION_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nsw/item_set.h"

namespace nsw {

inline constexpr int kEnumerationCap = 16;

struct Additive {
  std::vector<double> weights;
};

// Pointwise maximum of additive clauses; each clause has one weight per item.
struct Xos {
  std::vector<std::vector<double>> clauses;
};

// v(S) = min(sum of weights in S, cap).
struct BudgetedAdditive {
  std::vector<double> weights;
  double cap = 0.0;
};

// Full value table indexed by the subset bitmask; values.size() == 2^m.
struct ExplicitTable {
  int num_items = 0;
  std::vector<double> values;
};

enum class ValuationKind { kAdditive, kXos, kBudgetedAdditive, kTable };

std::string KindName(ValuationKind kind);

struct DemandResult {
  ItemSet set;
  double utility = 0.0;
};

struct ClauseResult {
  int index = 0;
  std::span<const double> weights;
  double value = 0.0;  // clause sum over the queried set
};

class Valuation {
 public:
  Valuation() = default;
  Valuation(Additive a);          // NOLINT(runtime/explicit)
  Valuation(Xos x);               // NOLINT(runtime/explicit)
  Valuation(BudgetedAdditive b);  // NOLINT(runtime/explicit)
  Valuation(ExplicitTable t);     // NOLINT(runtime/explicit)

  ValuationKind kind() const;
  int num_items() const { return num_items_; }

  double Value(ItemSet s) const;
  double Singleton(int j) const { return Value(ItemSet::Singleton(j)); }

  // A set maximizing v(S) - p(S) and that maximum. Exact ties go to the
  // lexicographically smallest set. Throws CapExceeded for enumerated
  // families with more than kEnumerationCap items.
  DemandResult Demand(std::span<const double> prices) const;

  // A clause f with f(S) = v(S), lowest index on ties. Additive valuations
  // answer with their single clause; other families throw InputError.
  ClauseResult XosClause(ItemSet s) const;

  // max over j in u of v({j}); 0 for the empty set.
  double SingletonMax(ItemSet u) const;

  // True when the family is XOS by representation (additive or clause list).
  bool IsXosRepresented() const {
    return kind() == ValuationKind::kAdditive || kind() == ValuationKind::kXos;
  }

  const Additive* as_additive() const { return std::get_if<Additive>(&rep_); }
  const Xos* as_xos() const { return std::get_if<Xos>(&rep_); }
  const BudgetedAdditive* as_budgeted() const {
    return std::get_if<BudgetedAdditive>(&rep_);
  }
  const ExplicitTable* as_table() const {
    return std::get_if<ExplicitTable>(&rep_);
  }

  // Multiplies every value by `factor` > 0.
  Valuation Scaled(double factor) const;

 private:
  DemandResult EnumeratedDemand(std::span<const double> prices) const;

  std::variant<Additive, Xos, BudgetedAdditive, ExplicitTable> rep_;
  int num_items_ = 0;
};

enum class CheckStatus { kPass, kFail, kSkipped, kNotApplicable };

std::string StatusName(CheckStatus s);

struct ValidationReport {
  bool zero_at_empty = true;
  CheckStatus monotone = CheckStatus::kSkipped;
  CheckStatus subadditive = CheckStatus::kSkipped;
  CheckStatus xos_consistent = CheckStatus::kNotApplicable;
  // Witnesses for the first violation found, in subset order.
  ItemSet monotone_set;  // v(monotone_set + monotone_item) < v(monotone_set)
  int monotone_item = -1;
  ItemSet subadditive_s;  // v(S | T) > v(S) + v(T), S and T disjoint
  ItemSet subadditive_t;
  std::string message;

  bool ok() const {
    return zero_at_empty && monotone != CheckStatus::kFail &&
           subadditive != CheckStatus::kFail &&
           xos_consistent != CheckStatus::kFail;
  }
};

// Exhaustive checks of the valuation axioms. Monotonicity and
// subadditivity are enumerated over all subsets (disjoint pairs for
// subadditivity, which suffices for monotone functions) when
// num_items <= cap, and reported as skipped otherwise.
ValidationReport ValidateValuation(const Valuation& v, int num_items,
                                   int cap = kEnumerationCap,
                                   double tol = 1e-9);

}  // namespace nsw

#endif  // NSW_VALUATION_H_
