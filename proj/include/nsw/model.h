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

#ifndef NSW_MODEL_H_
#define NSW_MODEL_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsw/item_set.h"
#include "nsw/valuation.h"

namespace nsw {

// Absolute tolerance for <= / >= checks on values whose largest singleton
// is O(1).
inline constexpr double kDefaultTol = 1e-9;

// Agents and items are dense integers in file order; the names are kept
// only for reporting.
struct Instance {
  std::vector<std::string> agent_names;
  std::vector<std::string> item_names;
  std::vector<Valuation> valuations;

  int num_agents() const { return static_cast<int>(valuations.size()); }
  int num_items() const { return static_cast<int>(item_names.size()); }
  ItemSet all_items() const { return ItemSet::Full(num_items()); }
  const Valuation& valuation(int agent) const { return valuations[agent]; }

  // Builds default names "a0.." / "i0.." around the given valuations.
  static Instance FromValuations(std::vector<Valuation> valuations,
                                 int num_items);
};

// One bundle per agent; bundles are pairwise disjoint. Items may stay
// unallocated.
struct Allocation {
  std::vector<ItemSet> bundles;

  explicit Allocation(int num_agents = 0) : bundles(num_agents) {}
  bool IsValid(int num_items) const;
  ItemSet Allocated() const;
};

// Injective map agent -> item; kUnmatched marks agents without an item.
struct Matching {
  static constexpr int kUnmatched = -1;
  std::vector<int> item_of;

  explicit Matching(int num_agents = 0) : item_of(num_agents, kUnmatched) {}
  bool IsInjective() const;
  ItemSet Range() const;
};

struct Column {
  ItemSet set;
  double weight = 0.0;
};

// Sparse per-agent distributions over item sets (the x_{i,S}).
struct ConfigSolution {
  std::vector<std::vector<Column>> columns;

  explicit ConfigSolution(int num_agents = 0) : columns(num_agents) {}
  double AgentMass(int agent) const;
  // sum over agents and columns containing j of the weights.
  std::vector<double> ItemLoads(int num_items) const;
  // sum_S v_i(S) x_{i,S}.
  double AgentValue(int agent, const Valuation& v) const;
};

// Per-agent per-item fractional mass x_{ij}.
struct ItemFractional {
  std::vector<std::vector<double>> mass;

  ItemFractional() = default;
  ItemFractional(int num_agents, int num_items)
      : mass(num_agents, std::vector<double>(num_items, 0.0)) {}
  bool IsFeasible(double tol = kDefaultTol) const;
};

// Parses and validates an instance document. Errors are InputError with a
// JSON path prefix, e.g. "/agents/1/valuation/weights/0: negative weight".
Instance LoadInstance(std::string_view text);
Instance LoadInstanceFile(const std::string& path);

// Canonical JSON rendering (2-space indented); LoadInstance inverts it.
std::string SerializeInstance(const Instance& inst);

// (prod_i v_i(S_i))^(1/n); exactly 0 when any bundle has value 0.
double NswValue(const Allocation& alloc, const Instance& inst);
// Same over an explicit list of per-agent values.
double GeometricMean(std::span<const double> values);

}  // namespace nsw

#endif  // NSW_MODEL_H_
