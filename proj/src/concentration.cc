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


#include "nsw/concentration.h"

#include <algorithm>
#include <cmath>

#include "nsw/errors.h"
#include "nsw/parallel.h"
#include "nsw/rng.h"

namespace nsw {
namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments MomentsOf(const std::vector<double>& xs) {
  Moments out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / xs.size();
  if (xs.size() < 2) return out;
  double sq = 0.0;
  for (double x : xs) sq += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(sq / (xs.size() - 1));
  return out;
}

double Fraction(const std::vector<double>& xs, auto pred) {
  if (xs.empty()) return 0.0;
  return static_cast<double>(std::count_if(xs.begin(), xs.end(), pred)) / xs.size();
}

double ProportionSe(double p, int trials) {
  return std::sqrt(p * (1.0 - p) / trials);
}

CheckResult TwoSidedFrom(const TailExperiment& exp, const std::vector<double>& values,
                         double a) {
  const double hi = (exp.q + 1) * a + exp.k;
  CheckResult out;
  out.name = "two_sided_tail";
  out.threshold = a;
  out.left = Fraction(values, [&](double v) { return v / exp.nu >= hi; });
  out.right = Fraction(values, [&](double v) { return v / exp.nu <= a; });
  const double rq = std::pow(out.right, exp.q);
  out.empirical = out.left * rq;
  out.bound = std::pow(static_cast<double>(exp.q), -exp.k);
  // Delta method: d(L R^q) = R^q dL + q L R^(q-1) dR.
  const double dl = ProportionSe(out.left, exp.trials);
  const double dr = ProportionSe(out.right, exp.trials);
  out.slack = 3.0 * (rq * dl + exp.q * out.left * std::pow(out.right, exp.q - 1) * dr);
  out.pass = out.empirical <= out.bound + out.slack;
  return out;
}

double ScaledMedian(const TailExperiment& exp, const std::vector<double>& values) {
  std::vector<double> g = values;
  for (double& v : g) v /= exp.nu;
  return LowerMedian(std::move(g));
}

CheckResult MedianFrom(const TailExperiment& exp, const std::vector<double>& values) {
  std::vector<double> g = values;
  for (double& v : g) v /= exp.nu;
  const Moments mo = MomentsOf(g);
  CheckResult out;
  out.name = "median_expectation";
  out.mean = mo.mean;
  out.median = LowerMedian(std::move(g));
  out.empirical = mo.mean;
  out.bound = 5.0 * (out.median + 1.0);
  out.slack = 3.0 * mo.sd / std::sqrt(static_cast<double>(exp.trials));
  out.pass = out.empirical <= out.bound + out.slack;
  return out;
}

CheckResult LowerTailFrom(const TailExperiment& exp, const std::vector<double>& values) {
  const Moments mo = MomentsOf(values);
  CheckResult out;
  out.name = "lower_tail";
  out.mean = mo.mean;
  out.threshold = mo.mean / (5.0 * (exp.q + 1)) - (exp.k + 1) * exp.nu / (exp.q + 1);
  out.empirical = Fraction(values, [&](double v) { return v <= out.threshold; });
  out.bound = std::pow(2.0 / std::pow(static_cast<double>(exp.q), exp.k), 1.0 / exp.q);
  out.slack = 3.0 * ProportionSe(out.empirical, exp.trials);
  out.pass = out.empirical <= out.bound + out.slack;
  return out;
}

}  // namespace

void ValidateExperiment(const TailExperiment& exp) {
  NSW_REQUIRE(exp.trials >= 1, "trials must be positive");
  NSW_REQUIRE(exp.q >= 1 && exp.k >= 1, "q and k must be at least 1");
  NSW_REQUIRE(exp.nu > 0.0, "nu must be positive");
  NSW_REQUIRE(exp.base.IsSubsetOf(ItemSet::Full(exp.f.num_items())),
              "base set exceeds the valuation's items");
  for (int j : exp.base) {
    NSW_REQUIRE(j < static_cast<int>(exp.prob.size()) && exp.prob[j] >= 0.0 &&
                    exp.prob[j] <= 1.0,
                "inclusion probability of item " + std::to_string(j) +
                    " is missing or outside [0, 1]");
    NSW_REQUIRE(exp.f.Singleton(j) <= exp.nu * (1.0 + 1e-12),
                "singleton value of item " + std::to_string(j) + " exceeds nu");
  }
  const ValidationReport rep = ValidateValuation(exp.f, exp.f.num_items());
  NSW_REQUIRE(rep.ok(), "experiment function is not monotone subadditive: " + rep.message);
}

std::vector<double> SampleValues(const TailExperiment& exp,
                                 const std::vector<double>& prob) {
  std::vector<double> out(exp.trials);
  const RngStream root(exp.seed);
  constexpr int kChunk = 4096;
  const int chunks = (exp.trials + kChunk - 1) / kChunk;
  ParallelFor(chunks, [&](int c) {
    const int end = std::min(exp.trials, (c + 1) * kChunk);
    for (int t = c * kChunk; t < end; ++t) {
      RngStream rng = root.Substream(static_cast<uint64_t>(t));
      ItemSet r;
      for (int j : exp.base) {
        if (rng.Bernoulli(prob[j])) r.Insert(j);
      }
      out[t] = exp.f.Value(r);
    }
  });
  return out;
}

double LowerMedian(std::vector<double> values) {
  NSW_REQUIRE(!values.empty(), "median of an empty sample");
  const size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  return values[mid];
}

CheckResult ExpectationLower(const TailExperiment& exp) {
  std::vector<double> prob(exp.f.num_items(), 1.0 / exp.k);
  const Moments mo = MomentsOf(SampleValues(exp, prob));
  CheckResult out;
  out.name = "expectation_lower";
  out.empirical = mo.mean;
  out.mean = mo.mean;
  out.bound = exp.f.Value(exp.base) / exp.k;
  out.slack = 3.0 * mo.sd / std::sqrt(static_cast<double>(exp.trials));
  out.pass = out.empirical >= out.bound - out.slack - 1e-12 * (1.0 + out.bound);
  return out;
}

CheckResult TwoSidedTail(const TailExperiment& exp, double a) {
  return TwoSidedFrom(exp, SampleValues(exp, exp.prob), a);
}

CheckResult TwoSidedTail(const TailExperiment& exp) {
  const std::vector<double> values = SampleValues(exp, exp.prob);
  return TwoSidedFrom(exp, values, ScaledMedian(exp, values));
}

CheckResult MedianExpectation(const TailExperiment& exp) {
  return MedianFrom(exp, SampleValues(exp, exp.prob));
}

CheckResult LowerTail(const TailExperiment& exp) {
  return LowerTailFrom(exp, SampleValues(exp, exp.prob));
}

std::vector<CheckResult> RunAllChecks(const TailExperiment& exp) {
  ValidateExperiment(exp);
  const std::vector<double> values = SampleValues(exp, exp.prob);
  return {ExpectationLower(exp), TwoSidedFrom(exp, values, ScaledMedian(exp, values)),
          MedianFrom(exp, values), LowerTailFrom(exp, values)};
}

double CascadeProduct(int terms) {
  double product = 1.0;
  for (int i = 1; i <= terms; ++i) {
    const double p = std::ldexp(1.0, -i);
    product *= std::pow(p, p);
  }
  return product;
}

}  // namespace nsw
