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

// Contention-resolution rounding of split configuration solutions, the
// iterated geometric-filter rounding loop, and the pluggable per-round
// rounding procedures it calls.

#ifndef NSW_ROUNDING_H_
#define NSW_ROUNDING_H_

#include <memory>
#include <string>
#include <vector>

#include "nsw/model.h"
#include "nsw/rng.h"
#include "nsw/splitting.h"

namespace nsw {

// Substream tags. Each sampled entity owns a substream keyed by its tag and
// index, so reordering loops never changes a run.
inline constexpr uint64_t kTagTentative = 1;
inline constexpr uint64_t kTagContention = 2;
inline constexpr uint64_t kTagGeometric = 3;
inline constexpr uint64_t kTagRound = 4;

// One contention-resolution pass: every agent in `agents` samples a column
// with probability weight / (sum of its weights); every item goes to a
// uniformly random agent among those whose tentative set contains it.
struct ContentionResult {
  std::vector<int> chosen;             // column index per agent, -1 if none
  std::vector<ItemSet> tentative;      // per agent
  std::vector<ItemSet> won;            // per agent, subset of tentative
  std::vector<std::vector<int>> contenders;  // per item, ascending agents
};

ContentionResult ResolveContention(const ConfigSolution& x,
                                   const std::vector<int>& agents, int num_items,
                                   const RngStream& rng);

struct XosRoundOutcome {
  Allocation r;                   // R_i
  std::vector<ItemSet> tentative;  // S_i
  std::vector<int> chosen;         // column index into the split output
  std::vector<int> large_item;     // l_i, -1 for agents without columns
  std::vector<std::vector<int>> contenders;
};

XosRoundOutcome RoundXos(const XosSplitOutput& split, const Instance& inst,
                         const RngStream& rng);

// sigma maximizing prod v_i(R_i + sigma(i)) over sigma: agents -> H.
Allocation FinalizeWithMatching(const Allocation& r, ItemSet h,
                                const Instance& inst, Matching* sigma = nullptr);

// Rounding procedure contract: return S_i for i in `agents`, pairwise
// disjoint, each a subset of a support set of x_i.
class RoundingProcedure {
 public:
  virtual ~RoundingProcedure() = default;
  virtual std::string name() const = 0;
  virtual std::vector<ItemSet> Round(const ConfigSolution& x,
                                     const std::vector<int>& agents,
                                     const Instance& inst,
                                     const std::vector<double>& v_prime,
                                     const RngStream& rng) const = 0;
};

class CrProcedure : public RoundingProcedure {
 public:
  std::string name() const override { return "cr"; }
  std::vector<ItemSet> Round(const ConfigSolution& x,
                             const std::vector<int>& agents, const Instance& inst,
                             const std::vector<double>& v_prime,
                             const RngStream& rng) const override;
};

// Exhaustive: every combination of one support set per agent and every
// assignment of each contested item to one of its contenders, maximizing
// sum_i v_i(S_i) / V'_i. First maximum in enumeration order wins.
class OracleProcedure : public RoundingProcedure {
 public:
  static constexpr uint64_t kNodeCap = 10'000'000;

  std::string name() const override { return "oracle"; }
  std::vector<ItemSet> Round(const ConfigSolution& x,
                             const std::vector<int>& agents, const Instance& inst,
                             const std::vector<double>& v_prime,
                             const RngStream& rng) const override;
};

std::unique_ptr<RoundingProcedure> MakeProcedure(const std::string& name);

double ScaledWelfare(const std::vector<ItemSet>& sets,
                     const std::vector<int>& agents, const Instance& inst,
                     const std::vector<double>& v_prime);

// max over nonempty A subset of `agents` of |A| / (oracle scaled welfare on
// A): the smallest d for which the oracle procedure meets its contract on
// every agent subset the iterated rounding can produce.
double MeasureOracleD(const ConfigSolution& x, const std::vector<int>& agents,
                      const Instance& inst, const std::vector<double>& v_prime);

struct RoundLog {
  int round = 0;
  std::vector<int> active;
  std::vector<double> ratio;  // v_i(S_i) / V'_i, parallel to active
  int exited = 0;
  int required = 0;  // ceil(delta |A_t|)
};

struct IteratedOutcome {
  Allocation t;                     // T_i
  std::vector<ItemSet> exit_set;    // S_i in the exit round
  std::vector<int> exit_round;      // 0 when the agent never exited
  std::vector<int> exit_order;      // agents in exit order
  std::vector<int> r;               // r_j per item, 0 outside I_0
  std::vector<double> v_prime;
  std::vector<RoundLog> rounds;
  std::vector<int> unfinished;      // agents still active at the round cap
  int round_cap = 0;
  int shortfall_rounds = 0;         // rounds with exited < required
};

int IteratedRoundCap(int num_agents, double delta);

IteratedOutcome IteratedRound(const SubaddSplitOutput& split, ItemSet items,
                              double delta, const RoundingProcedure& proc,
                              const Instance& inst, const RngStream& rng);

}  // namespace nsw

#endif  // NSW_ROUNDING_H_
