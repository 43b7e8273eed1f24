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

// Revised primal simplex for packing LPs
//
//   maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0.
//
// The all-slack basis is feasible, so no phase one is needed. Columns are
// sparse and may be appended between solves; the previous basis stays
// primal feasible and is reused as the starting point.

#ifndef NSW_LP_H_
#define NSW_LP_H_

#include <utility>
#include <vector>

namespace nsw {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpOptions {
  int max_iterations = 100000;
  double optimality_tol = 1e-11;  // relative to 1 + max |c_j|
  double pivot_tol = 1e-10;
  int refactor_every = 40;
  int degenerate_streak = 30;  // switch to Bland's rule after this many
};

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> primal;  // one entry per column
  std::vector<double> dual;    // one entry per row, >= 0 at optimum
  int iterations = 0;
};

class PackingLp {
 public:
  explicit PackingLp(std::vector<double> rhs);

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_columns() const { return static_cast<int>(cost_.size()); }

  // Entries are (row, coefficient) pairs; returns the column index.
  int AddColumn(double cost, std::vector<std::pair<int, double>> entries);

  LpResult Solve(const LpOptions& options = {});

 private:
  bool Refactor();
  void ColumnInto(int var, std::vector<double>* dense) const;
  double Cost(int var) const;

  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  // Basic variable per row; slack of row k is encoded as -(k + 1).
  std::vector<int> basis_;
  std::vector<std::vector<double>> binv_;
};

}  // namespace nsw

#endif  // NSW_LP_H_
