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

#ifndef NSW_MATCHING_H_
#define NSW_MATCHING_H_

#include <vector>

#include "nsw/item_set.h"
#include "nsw/model.h"

namespace nsw {

// score[i][k] >= 0 is the value of giving right vertex k to agent i. The
// right side is a list of item ids so callers can match into a subset.
struct MatchingProblem {
  std::vector<int> items;
  std::vector<std::vector<double>> score;  // agents x items.size()
};

// Lexicographic objective of an assignment: number of agents with positive
// score, then the sum of log scores over those agents.
struct MatchingObjective {
  int positive = 0;
  double log_sum = 0.0;
};

MatchingObjective EvaluateMatching(const MatchingProblem& prob,
                                   const std::vector<int>& slot_of);

// Maximizes MatchingObjective over injective maps (Hungarian algorithm on
// log scores). Agents left with score 0 get the lowest-index unused items.
// The returned Matching holds item ids, not slots.
Matching ProductMatching(const MatchingProblem& prob);

struct InitialMatching {
  Matching tau;
  ItemSet h;              // tau's range
  ItemSet rest;           // I' = all items minus h
  std::vector<int> active;  // A' = agents with v_i(I') > 0, ascending
};

InitialMatching ComputeInitialMatching(const Instance& inst);

// Constructive rematching: given the product-optimal tau, another matching
// pi into tau's range and per-agent W, nu, builds rho with
//   prod max(W_i, v_i(rho(i))) >= prod max(W_i, v_i(pi(i)), nu_i).
struct Rematch {
  Matching rho;
  std::vector<int> tilde;     // agents with W_i < max(v_i(pi(i)), nu_i)
  std::vector<int> a_nu;
  std::vector<int> a_tau;
};

Rematch RematchRho(const Matching& tau, const Matching& pi,
                   const std::vector<double>& w, const std::vector<double>& nu,
                   const Instance& inst);

// Checks the rematching inequality in log space with relative slack `tol`.
bool RematchGuaranteeHolds(const Matching& rho, const Matching& pi,
                           const std::vector<double>& w,
                           const std::vector<double>& nu, const Instance& inst,
                           double tol = 1e-12);

// pi(i) = best singleton of S*_i within H, otherwise the lowest unused
// H item.
Matching ExtensionPi(const Allocation& s_star, const Matching& tau,
                     const Instance& inst);

}  // namespace nsw

#endif  // NSW_MATCHING_H_
