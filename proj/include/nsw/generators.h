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


// Seeded random instance generators for each valuation family.

#ifndef NSW_GENERATORS_H_
#define NSW_GENERATORS_H_

#include <cstdint>
#include <string>

#include "nsw/model.h"
#include "nsw/rng.h"

namespace nsw {

enum class Family {
  kAdditive,
  kXos,
  kBudgeted,
  kTable,         // max of random additive clauses, materialized as a table
  kTableMixture,  // budgeted additive + c * ceil(|S & U| / 2), as a table
};

enum class WeightDist {
  kUniform,  // (0, 1]
  kInteger,  // {1, ..., 10}
  kHeavy,    // Pareto, x_min = 1, shape 3
};

struct GenSpec {
  Family family = Family::kAdditive;
  int n = 2;
  int m = 4;
  WeightDist dist = WeightDist::kUniform;
  int clauses = 3;         // kXos, kTable
  double cap_ratio = 0.5;  // kBudgeted, kTableMixture: cap / total weight
  uint64_t seed = 0;
};

std::string FamilyName(Family f);
Family ParseFamily(const std::string& name);
std::string DistName(WeightDist d);
WeightDist ParseDist(const std::string& name);

// Throws InputError on an invalid spec.
void ValidateGenSpec(const GenSpec& spec);

// Fields as in GenSpec; missing fields keep their defaults.
GenSpec GenSpecFromJson(const std::string& text);

double DrawWeight(WeightDist dist, RngStream& rng);

// Mean and variance of DrawWeight.
double DistMean(WeightDist dist);
double DistVariance(WeightDist dist);

Valuation GenerateValuation(const GenSpec& spec, RngStream& rng);

// Agent i draws from spec.seed's substream i.
Instance Generate(const GenSpec& spec);

}  // namespace nsw

#endif  // NSW_GENERATORS_H_
