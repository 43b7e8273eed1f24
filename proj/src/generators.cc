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


#include "nsw/generators.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "nsw/errors.h"

namespace nsw {
namespace {

std::vector<double> DrawWeights(int m, WeightDist dist, RngStream& rng) {
  std::vector<double> w(m);
  for (double& x : w) x = DrawWeight(dist, rng);
  return w;
}

ExplicitTable Materialize(int m, const auto& value_of) {
  ExplicitTable t;
  t.num_items = m;
  t.values.resize(std::size_t{1} << m);
  for (uint64_t mask = 0; mask < t.values.size(); ++mask) {
    t.values[mask] = value_of(ItemSet(mask));
  }
  return t;
}

}  // namespace

std::string FamilyName(Family f) {
  switch (f) {
    case Family::kAdditive: return "additive";
    case Family::kXos: return "xos";
    case Family::kBudgeted: return "budgeted";
    case Family::kTable: return "table";
    case Family::kTableMixture: return "table_mixture";
  }
  return "?";
}

Family ParseFamily(const std::string& name) {
  for (Family f : {Family::kAdditive, Family::kXos, Family::kBudgeted, Family::kTable,
                   Family::kTableMixture}) {
    if (FamilyName(f) == name) return f;
  }
  throw InputError("unknown family \"" + name +
                   "\" (expected additive|xos|budgeted|table|table_mixture)");
}

std::string DistName(WeightDist d) {
  switch (d) {
    case WeightDist::kUniform: return "uniform";
    case WeightDist::kInteger: return "integer";
    case WeightDist::kHeavy: return "heavy";
  }
  return "?";
}

WeightDist ParseDist(const std::string& name) {
  for (WeightDist d : {WeightDist::kUniform, WeightDist::kInteger, WeightDist::kHeavy}) {
    if (DistName(d) == name) return d;
  }
  throw InputError("unknown weight distribution \"" + name +
                   "\" (expected uniform|integer|heavy)");
}

void ValidateGenSpec(const GenSpec& spec) {
  NSW_REQUIRE(spec.n >= 1, "n must be positive");
  NSW_REQUIRE(spec.m >= 1 && spec.m <= ItemSet::kMaxItems, "m must lie in [1, 64]");
  NSW_REQUIRE(spec.clauses >= 1, "clauses must be positive");
  NSW_REQUIRE(spec.cap_ratio > 0.0, "cap ratio must be positive");
  if (spec.family == Family::kTable || spec.family == Family::kTableMixture) {
    NSW_REQUIRE(spec.m <= kEnumerationCap, "table families need m <= 16");
  }
}

GenSpec GenSpecFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed GenSpec JSON: ") + e.what());
  }
  NSW_REQUIRE(j.is_object(), "GenSpec JSON must be an object");
  GenSpec spec;
  try {
    if (j.contains("family")) spec.family = ParseFamily(j["family"].get<std::string>());
    if (j.contains("dist")) spec.dist = ParseDist(j["dist"].get<std::string>());
    if (j.contains("n")) spec.n = j["n"].get<int>();
    if (j.contains("m")) spec.m = j["m"].get<int>();
    if (j.contains("clauses")) spec.clauses = j["clauses"].get<int>();
    if (j.contains("cap_ratio")) spec.cap_ratio = j["cap_ratio"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad GenSpec field: ") + e.what());
  }
  ValidateGenSpec(spec);
  return spec;
}

double DrawWeight(WeightDist dist, RngStream& rng) {
  switch (dist) {
    case WeightDist::kUniform: return 1.0 - rng.Uniform();
    case WeightDist::kInteger: return 1.0 + static_cast<double>(rng.UniformInt(10));
    case WeightDist::kHeavy: return std::pow(1.0 - rng.Uniform(), -1.0 / 3.0);
  }
  return 0.0;
}

double DistMean(WeightDist dist) {
  switch (dist) {
    case WeightDist::kUniform: return 0.5;
    case WeightDist::kInteger: return 5.5;
    case WeightDist::kHeavy: return 1.5;
  }
  return 0.0;
}

double DistVariance(WeightDist dist) {
  switch (dist) {
    case WeightDist::kUniform: return 1.0 / 12.0;
    case WeightDist::kInteger: return 99.0 / 12.0;
    case WeightDist::kHeavy: return 0.75;
  }
  return 0.0;
}

Valuation GenerateValuation(const GenSpec& spec, RngStream& rng) {
  const int m = spec.m;
  switch (spec.family) {
    case Family::kAdditive:
      return Additive{DrawWeights(m, spec.dist, rng)};
    case Family::kXos:
    case Family::kTable: {
      Xos x;
      for (int c = 0; c < spec.clauses; ++c) {
        // Sparse clauses keep the maximum from collapsing onto one clause.
        std::vector<double> w = DrawWeights(m, spec.dist, rng);
        for (double& v : w) {
          if (rng.Bernoulli(0.3)) v = 0.0;
        }
        x.clauses.push_back(std::move(w));
      }
      if (spec.family == Family::kXos) return x;
      const Valuation v(std::move(x));
      return Materialize(m, [&](ItemSet s) { return v.Value(s); });
    }
    case Family::kBudgeted:
    case Family::kTableMixture: {
      BudgetedAdditive b;
      b.weights = DrawWeights(m, spec.dist, rng);
      double total = 0.0;
      for (double w : b.weights) total += w;
      b.cap = spec.cap_ratio * total;
      if (spec.family == Family::kBudgeted) return b;
      ItemSet u;
      for (int j = 0; j < m; ++j) {
        if (rng.Bernoulli(0.5)) u.Insert(j);
      }
      const double c = DistMean(spec.dist);
      const Valuation base(std::move(b));
      return Materialize(m, [&](ItemSet s) {
        return base.Value(s) + c * static_cast<double>(((s & u).size() + 1) / 2);
      });
    }
  }
  throw InputError("unknown family");
}

Instance Generate(const GenSpec& spec) {
  ValidateGenSpec(spec);
  const RngStream root(spec.seed);
  std::vector<Valuation> vals;
  for (int i = 0; i < spec.n; ++i) {
    RngStream rng = root.Substream(static_cast<uint64_t>(i));
    vals.push_back(GenerateValuation(spec, rng));
  }
  return Instance::FromValuations(std::move(vals), spec.m);
}

}  // namespace nsw
