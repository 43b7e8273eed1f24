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

// Brute-force exact solvers. They are deliberately naive: plain
// enumeration plus the packing LP, no pruning.

#ifndef NSW_ORACLE_H_
#define NSW_ORACLE_H_

#include <cstdint>
#include <vector>

#include "nsw/model.h"

namespace nsw {

inline constexpr uint64_t kAssignmentCap = 10'000'000;
inline constexpr uint64_t kConfigColumnCap = 1'000'000;

struct ExactResult {
  double optimum = 0.0;
  Allocation witness;
  ConfigSolution config;  // only for the configuration LP
  uint64_t nodes = 0;
};

// Max NSW over all n^m assignments of every item. Ties keep the first
// assignment in mixed-radix order (item 0 is the least significant digit).
ExactResult ExactNsw(const Instance& inst);

// Max over assignments of `universe` to the agents with scale_i > 0 of
// sum_i v_i(T_i) / scale_i. Other agents receive nothing.
ExactResult ExactScaledWelfare(const Instance& inst,
                               const std::vector<double>& scale,
                               ItemSet universe);
ExactResult ExactScaledWelfare(const Instance& inst,
                               const std::vector<double>& scale);

// Configuration LP over `agents` and the items of `universe`:
//   max sum_{i,S} v_i(S)/scale_i x_{i,S}
//   s.t. sum_S x_{i,S} <= 1 per agent, sum_{i,S ni j} x_{i,S} <= 1 per item.
// An empty `scale` means welfare (all ones).
ExactResult ExactConfigLp(const Instance& inst, const std::vector<int>& agents,
                          ItemSet universe, const std::vector<double>& scale);
ExactResult ExactConfigLp(const Instance& inst);

}  // namespace nsw

#endif  // NSW_ORACLE_H_
