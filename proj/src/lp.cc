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

#include "nsw/lp.h"

#include <algorithm>
#include <cmath>

#include "nsw/errors.h"

namespace nsw {

PackingLp::PackingLp(std::vector<double> rhs) : rhs_(std::move(rhs)) {
  for (double b : rhs_) {
    NSW_REQUIRE(std::isfinite(b) && b >= 0.0, "packing LP needs b >= 0");
  }
}

int PackingLp::AddColumn(double cost,
                         std::vector<std::pair<int, double>> entries) {
  for (const auto& [row, a] : entries) {
    NSW_REQUIRE(row >= 0 && row < num_rows(), "LP column row out of range");
    NSW_REQUIRE(std::isfinite(a), "LP coefficient is not finite");
  }
  cost_.push_back(cost);
  cols_.push_back(std::move(entries));
  return num_columns() - 1;
}

double PackingLp::Cost(int var) const { return var >= 0 ? cost_[var] : 0.0; }

void PackingLp::ColumnInto(int var, std::vector<double>* dense) const {
  std::fill(dense->begin(), dense->end(), 0.0);
  if (var < 0) {
    (*dense)[-var - 1] = 1.0;
    return;
  }
  for (const auto& [row, a] : cols_[var]) (*dense)[row] += a;
}

// Gauss-Jordan inversion of the basis matrix with partial pivoting.
bool PackingLp::Refactor() {
  const int r = num_rows();
  std::vector<std::vector<double>> a(r, std::vector<double>(2 * r, 0.0));
  std::vector<double> col(r);
  for (int k = 0; k < r; ++k) {
    ColumnInto(basis_[k], &col);
    for (int i = 0; i < r; ++i) a[i][k] = col[i];
    a[k][r + k] = 1.0;
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    for (int i = c + 1; i < r; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    }
    if (std::abs(a[piv][c]) < 1e-13) return false;
    std::swap(a[piv], a[c]);
    const double d = a[c][c];
    for (double& v : a[c]) v /= d;
    for (int i = 0; i < r; ++i) {
      if (i == c || a[i][c] == 0.0) continue;
      const double f = a[i][c];
      for (int k = 0; k < 2 * r; ++k) a[i][k] -= f * a[c][k];
    }
  }
  binv_.assign(r, std::vector<double>(r));
  for (int i = 0; i < r; ++i) {
    std::copy(a[i].begin() + r, a[i].end(), binv_[i].begin());
  }
  return true;
}

LpResult PackingLp::Solve(const LpOptions& options) {
  const int r = num_rows();
  const int n = num_columns();
  if (static_cast<int>(basis_.size()) != r) {
    basis_.resize(r);
    for (int k = 0; k < r; ++k) basis_[k] = -(k + 1);
  }
  if (!Refactor()) {
    for (int k = 0; k < r; ++k) basis_[k] = -(k + 1);
    Refactor();
  }

  double max_cost = 0.0;
  for (double c : cost_) max_cost = std::max(max_cost, std::abs(c));
  const double dtol = options.optimality_tol * (1.0 + max_cost);

  std::vector<double> xb(r);
  auto recompute_xb = [&] {
    for (int i = 0; i < r; ++i) {
      double s = 0.0;
      for (int k = 0; k < r; ++k) s += binv_[i][k] * rhs_[k];
      xb[i] = std::max(s, 0.0);
    }
  };
  recompute_xb();

  // Bland order: structural columns first, then slacks.
  auto order = [n](int var) { return var >= 0 ? var : n + (-var - 1); };

  std::vector<char> basic_col(n, 0), basic_slack(r, 0);
  for (int var : basis_) {
    if (var >= 0) basic_col[var] = 1; else basic_slack[-var - 1] = 1;
  }

  LpResult result;
  std::vector<double> y(r), alpha(r), col(r);
  int degenerate = 0;
  int since_refactor = 0;
  while (true) {
    for (int k = 0; k < r; ++k) {
      double s = 0.0;
      for (int i = 0; i < r; ++i) s += Cost(basis_[i]) * binv_[i][k];
      y[k] = s;
    }
    const bool bland = degenerate >= options.degenerate_streak;
    int entering = 0;
    bool found = false;
    double best = dtol;
    for (int j = 0; j < n && !(bland && found); ++j) {
      if (basic_col[j]) continue;
      double d = cost_[j];
      for (const auto& [row, a] : cols_[j]) d -= y[row] * a;
      if (d > best) {
        best = bland ? dtol : d;
        entering = j;
        found = true;
      }
    }
    for (int k = 0; k < r && !(bland && found); ++k) {
      if (basic_slack[k]) continue;
      const double d = -y[k];
      if (d > best) {
        best = bland ? dtol : d;
        entering = -(k + 1);
        found = true;
      }
    }
    if (!found) break;
    if (result.iterations >= options.max_iterations) {
      result.status = LpStatus::kIterationLimit;
      break;
    }
    ++result.iterations;

    ColumnInto(entering, &col);
    for (int i = 0; i < r; ++i) {
      double s = 0.0;
      for (int k = 0; k < r; ++k) s += binv_[i][k] * col[k];
      alpha[i] = s;
    }
    int leave = -1;
    double theta = 0.0;
    for (int i = 0; i < r; ++i) {
      if (alpha[i] <= options.pivot_tol) continue;
      const double t = xb[i] / alpha[i];
      if (leave < 0 || t < theta - 1e-14) {
        leave = i;
        theta = t;
      } else if (t <= theta + 1e-14) {
        const bool better = bland ? order(basis_[i]) < order(basis_[leave])
                                  : alpha[i] > alpha[leave];
        if (better) {
          leave = i;
          theta = std::min(theta, t);
        }
      }
    }
    if (leave < 0) {
      result.status = LpStatus::kUnbounded;
      break;
    }
    degenerate = theta <= 1e-14 ? degenerate + 1 : 0;

    for (int i = 0; i < r; ++i) {
      if (i != leave) xb[i] = std::max(xb[i] - theta * alpha[i], 0.0);
    }
    xb[leave] = theta;
    const double piv = alpha[leave];
    for (double& v : binv_[leave]) v /= piv;
    for (int i = 0; i < r; ++i) {
      if (i == leave || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      for (int k = 0; k < r; ++k) binv_[i][k] -= f * binv_[leave][k];
    }
    const int out = basis_[leave];
    if (out >= 0) basic_col[out] = 0; else basic_slack[-out - 1] = 0;
    basis_[leave] = entering;
    if (entering >= 0) basic_col[entering] = 1; else basic_slack[-entering - 1] = 1;

    if (++since_refactor >= options.refactor_every) {
      since_refactor = 0;
      if (Refactor()) recompute_xb();
    }
  }

  result.primal.assign(n, 0.0);
  for (int i = 0; i < r; ++i) {
    if (basis_[i] >= 0) result.primal[basis_[i]] = xb[i];
  }
  for (int j = 0; j < n; ++j) result.objective += cost_[j] * result.primal[j];
  result.dual.resize(r);
  for (int k = 0; k < r; ++k) result.dual[k] = std::max(y[k], 0.0);
  return result;
}

}  // namespace nsw
