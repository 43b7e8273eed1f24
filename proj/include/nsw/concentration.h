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


// Monte-Carlo checks of the concentration bounds for monotone subadditive
// functions of a random subset R of a base set S, where each item of S
// enters R independently.

#ifndef NSW_CONCENTRATION_H_
#define NSW_CONCENTRATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "nsw/item_set.h"
#include "nsw/valuation.h"

namespace nsw {

struct TailExperiment {
  Valuation f;
  ItemSet base;
  std::vector<double> prob;  // per item; items outside base are ignored
  int trials = 100000;
  int q = 2;
  int k = 3;
  double nu = 1.0;  // upper bound on singleton values over base
  uint64_t seed = 0;
};

// Throws InputError unless f is monotone subadditive with singletons <= nu
// on base, probabilities lie in [0, 1], and trials, q, k >= 1.
void ValidateExperiment(const TailExperiment& exp);

struct CheckResult {
  std::string name;
  double empirical = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
  // Raw quantities behind `empirical`.
  double mean = 0.0;
  double median = 0.0;
  double left = 0.0;   // two_sided_tail: Pr[f >= (q + 1) a + k]
  double right = 0.0;  // two_sided_tail: Pr[f <= a]
  double threshold = 0.0;
};

// f(R) per trial; trial t draws from substream t of exp.seed.
std::vector<double> SampleValues(const TailExperiment& exp,
                                 const std::vector<double>& prob);

double LowerMedian(std::vector<double> values);

// E[f(R)] >= f(S) / k with every item of S kept with probability 1 / k.
CheckResult ExpectationLower(const TailExperiment& exp);

// Pr[g >= (q + 1) a + k] * Pr[g <= a]^q <= q^-k for g = f / nu.
CheckResult TwoSidedTail(const TailExperiment& exp, double a);
// a = lower median of g.
CheckResult TwoSidedTail(const TailExperiment& exp);

// E[g] <= 5 (med(g) + 1) for g = f / nu.
CheckResult MedianExpectation(const TailExperiment& exp);

// Pr[f <= E[f] / (5 (q + 1)) - (k + 1) nu / (q + 1)] <= (2 / q^k)^(1 / q).
CheckResult LowerTail(const TailExperiment& exp);

// The four checks above, in that order.
std::vector<CheckResult> RunAllChecks(const TailExperiment& exp);

// prod_{i = 1..terms} (2^-i)^(2^-i); tends to 1/4.
double CascadeProduct(int terms = 40);

}  // namespace nsw

#endif  // NSW_CONCENTRATION_H_
