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

// Concave extension v+(x) = max { sum_S lambda_S v(S) : sum_S lambda_S <= 1,
// sum_{S ni j} lambda_S <= x_j, lambda >= 0 } and the Eisenberg-Gale
// program max sum_i log v+_i(x_i) over the item-capacity polytope.

#ifndef NSW_RELAXATION_H_
#define NSW_RELAXATION_H_

#include <span>
#include <string>
#include <vector>

#include "nsw/model.h"
#include "nsw/valuation.h"

namespace nsw {

struct ConcaveExtOptions {
  // Solve the LP over every subset of the support instead of generating
  // columns from demand queries.
  bool enumerate = false;
  int max_rounds = 1000;
  double tol = 1e-9;  // relative to 1 + v(support)
};

struct ConcaveExtValue {
  double value = 0.0;  // primal LP value
  // Dual certificate: q + p(S) >= v(S) for every S, so v+(y) <= q + p.y.
  double q = 0.0;
  std::vector<double> p;
  // Weights sum to 1; the empty set carries the unused mass.
  std::vector<Column> columns;
  double gap = 0.0;  // q + p.x - value
  int rounds = 0;
  bool converged = true;

  double DualValue(std::span<const double> x) const;
};

// `pool` (optional) carries columns between calls for the same valuation;
// they are stripped to the current support and used as the initial
// restricted set.
ConcaveExtValue ConcaveExt(const Valuation& v, std::span<const double> x,
                           const ConcaveExtOptions& options = {},
                           std::vector<ItemSet>* pool = nullptr);

struct Supergradient {
  double base = 0.0;          // log(q + p.x) = log v+(x) up to the gap
  std::vector<double> grad;   // p / (q + p.x)
};

Supergradient SupergradientLog(const ConcaveExtValue& ext,
                               std::span<const double> x);
Supergradient SupergradientLog(const Valuation& v, std::span<const double> x);

// alpha / (2 + (1 + alpha) n).
double CorollaryEpsilon(double alpha, int num_agents);

struct EgParams {
  double alpha = 0.25;
  double epsilon = 0.0;  // <= 0 selects CorollaryEpsilon
  int max_iterations = 4000;
  double step0 = 0.5;
  int patience = 400;
  double improve_tol = 1e-10;
  double gap_tol = -1.0;  // < 0 selects epsilon^4 * n
  bool enumerate_extension = false;
};

struct EgResult {
  // Rows are global agent ids; inactive agents and items outside the
  // universe carry zero mass.
  ItemFractional x;
  std::vector<ConcaveExtValue> ext;  // per global agent, empty if inactive
  std::vector<double> v_plus;        // per global agent
  double epsilon = 0.0;
  double objective = 0.0;  // sum of log v+ over active agents
  int iterations = 0;
  double fw_gap = 0.0;     // Frank-Wolfe gap over the epsilon-floored set
  // n + sum_j max_i g_ij - sum_i g_i.x_i: an upper bound on
  // max_{x*} sum_i v+_i(x*_i) / v+_i(x_i) from the dual certificates.
  double ratio_bound = 0.0;
  std::string stop_reason;
};

// Projected supergradient ascent on the agents in `agents` restricted to
// `universe`, with x_ij >= epsilon and sum_i x_ij <= 1.
EgResult SolveEg(const Instance& inst, const std::vector<int>& agents,
                 ItemSet universe, const EgParams& params = {});

struct ScaledCheck {
  double ratio = 0.0;
  double limit = 0.0;  // (1 + alpha) |agents|
  bool pass = false;
};

// max over feasible x* of sum_i v+_i(x*_i) / v+_i(x_i) via the exact
// configuration LP on v_i / v+_i(x_i).
ScaledCheck ScaledOptimumCheck(const EgResult& eg, const Instance& inst,
                               const std::vector<int>& agents, ItemSet universe,
                               double alpha);

// Euclidean projection of z onto { y : y >= floor, sum y <= 1 }.
std::vector<double> ProjectCappedSimplex(std::vector<double> z, double floor);

}  // namespace nsw

#endif  // NSW_RELAXATION_H_
