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

#include "nsw/model.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nsw/errors.h"

namespace nsw {
namespace {

using json = nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& msg) {
  throw InputError(path + ": " + msg);
}

const json& Field(const json& obj, const std::string& path,
                  const std::string& key) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, "missing field \"" + key + "\"");
  return *it;
}

double Real(const json& node, const std::string& path) {
  if (!node.is_number()) Fail(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) Fail(path, "non-finite number");
  if (v < 0.0) Fail(path, "negative weight");
  return v;
}

std::vector<double> RealArray(const json& node, const std::string& path,
                              int expected_len) {
  if (!node.is_array()) Fail(path, "expected an array");
  if (static_cast<int>(node.size()) != expected_len) {
    Fail(path, "expected " + std::to_string(expected_len) + " entries, got " +
                   std::to_string(node.size()));
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (size_t k = 0; k < node.size(); ++k) {
    out.push_back(Real(node[k], path + "/" + std::to_string(k)));
  }
  return out;
}

// Parses "0,3,5" into a bitmask; items must be strictly increasing.
bool ParseSetKey(const std::string& key, int m, uint64_t* mask) {
  *mask = 0;
  if (key.empty()) return true;
  std::stringstream ss(key);
  std::string tok;
  int prev = -1;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      return false;
    }
    const int j = std::stoi(tok);
    if (j <= prev || j >= m) return false;
    *mask |= uint64_t{1} << j;
    prev = j;
  }
  return true;
}

Valuation ParseValuation(const json& node, const std::string& path, int m) {
  const json& kind_node = Field(node, path, "kind");
  if (!kind_node.is_string()) Fail(path + "/kind", "expected a string");
  const std::string kind = kind_node.get<std::string>();
  if (kind == "additive") {
    return Additive{RealArray(Field(node, path, "weights"), path + "/weights", m)};
  }
  if (kind == "xos") {
    const json& clauses = Field(node, path, "clauses");
    const std::string cpath = path + "/clauses";
    if (!clauses.is_array()) Fail(cpath, "expected an array");
    if (clauses.empty()) Fail(cpath, "xos valuation needs at least one clause");
    Xos x;
    for (size_t c = 0; c < clauses.size(); ++c) {
      x.clauses.push_back(RealArray(clauses[c], cpath + "/" + std::to_string(c), m));
    }
    return x;
  }
  if (kind == "budgeted_additive") {
    BudgetedAdditive b;
    b.weights = RealArray(Field(node, path, "weights"), path + "/weights", m);
    b.cap = Real(Field(node, path, "cap"), path + "/cap");
    return b;
  }
  if (kind == "table") {
    if (m > kEnumerationCap) {
      Fail(path, "table valuations support at most " +
                     std::to_string(kEnumerationCap) + " items");
    }
    const json& values = Field(node, path, "values");
    const std::string vpath = path + "/values";
    if (!values.is_object()) Fail(vpath, "expected an object");
    ExplicitTable t;
    t.num_items = m;
    t.values.assign(size_t{1} << m, 0.0);
    std::vector<bool> seen(t.values.size(), false);
    for (auto it = values.begin(); it != values.end(); ++it) {
      uint64_t mask = 0;
      if (!ParseSetKey(it.key(), m, &mask)) {
        Fail(vpath, "invalid subset key \"" + it.key() + "\"");
      }
      if (seen[mask]) Fail(vpath, "duplicate subset key \"" + it.key() + "\"");
      seen[mask] = true;
      t.values[mask] = Real(it.value(), vpath + "/" + it.key());
    }
    for (uint64_t mask = 0; mask < seen.size(); ++mask) {
      if (!seen[mask]) {
        Fail(vpath, "missing subset key \"" + ItemSet(mask).ToString() + "\"");
      }
    }
    Valuation v(std::move(t));
    const ValidationReport report = ValidateValuation(v, m);
    if (!report.ok()) Fail(path, "table is not a valuation: " + report.message);
    return v;
  }
  Fail(path + "/kind", "unknown valuation kind \"" + kind + "\"");
}

json ValuationToJson(const Valuation& v) {
  json out;
  out["kind"] = KindName(v.kind());
  switch (v.kind()) {
    case ValuationKind::kAdditive:
      out["weights"] = v.as_additive()->weights;
      break;
    case ValuationKind::kXos:
      out["clauses"] = v.as_xos()->clauses;
      break;
    case ValuationKind::kBudgetedAdditive:
      out["weights"] = v.as_budgeted()->weights;
      out["cap"] = v.as_budgeted()->cap;
      break;
    case ValuationKind::kTable: {
      json values = json::object();
      const auto& t = *v.as_table();
      for (uint64_t mask = 0; mask < t.values.size(); ++mask) {
        values[ItemSet(mask).ToString()] = t.values[mask];
      }
      out["values"] = std::move(values);
      break;
    }
  }
  return out;
}

}  // namespace

Instance Instance::FromValuations(std::vector<Valuation> valuations,
                                  int num_items) {
  Instance inst;
  for (size_t i = 0; i < valuations.size(); ++i) {
    inst.agent_names.push_back("a" + std::to_string(i));
  }
  for (int j = 0; j < num_items; ++j) inst.item_names.push_back("i" + std::to_string(j));
  inst.valuations = std::move(valuations);
  return inst;
}

bool Allocation::IsValid(int num_items) const {
  ItemSet seen;
  const ItemSet universe = ItemSet::Full(num_items);
  for (ItemSet b : bundles) {
    if (!b.IsSubsetOf(universe) || b.Intersects(seen)) return false;
    seen = seen | b;
  }
  return true;
}

ItemSet Allocation::Allocated() const {
  ItemSet all;
  for (ItemSet b : bundles) all = all | b;
  return all;
}

bool Matching::IsInjective() const {
  std::set<int> used;
  for (int j : item_of) {
    if (j == kUnmatched) continue;
    if (!used.insert(j).second) return false;
  }
  return true;
}

ItemSet Matching::Range() const {
  ItemSet r;
  for (int j : item_of) {
    if (j != kUnmatched) r.Insert(j);
  }
  return r;
}

double ConfigSolution::AgentMass(int agent) const {
  double total = 0.0;
  for (const Column& c : columns[agent]) total += c.weight;
  return total;
}

std::vector<double> ConfigSolution::ItemLoads(int num_items) const {
  std::vector<double> load(num_items, 0.0);
  for (const auto& agent_cols : columns) {
    for (const Column& c : agent_cols) {
      for (int j : c.set) load[j] += c.weight;
    }
  }
  return load;
}

double ConfigSolution::AgentValue(int agent, const Valuation& v) const {
  double total = 0.0;
  for (const Column& c : columns[agent]) total += c.weight * v.Value(c.set);
  return total;
}

bool ItemFractional::IsFeasible(double tol) const {
  if (mass.empty()) return true;
  const size_t m = mass.front().size();
  for (size_t j = 0; j < m; ++j) {
    double load = 0.0;
    for (const auto& row : mass) {
      if (row[j] < -tol || row[j] > 1.0 + tol) return false;
      load += row[j];
    }
    if (load > 1.0 + tol) return false;
  }
  return true;
}

Instance LoadInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("/: malformed JSON: ") + e.what());
  }
  Instance inst;
  const json& items = Field(doc, "", "items");
  if (!items.is_array()) Fail("/items", "expected an array");
  if (items.empty()) Fail("/items", "instance needs at least one item");
  if (items.size() > static_cast<size_t>(ItemSet::kMaxItems)) {
    Fail("/items", "at most " + std::to_string(ItemSet::kMaxItems) +
                       " items are supported");
  }
  std::set<std::string> names;
  for (size_t j = 0; j < items.size(); ++j) {
    const std::string path = "/items/" + std::to_string(j);
    if (!items[j].is_string()) Fail(path, "expected a string");
    const std::string name = items[j].get<std::string>();
    if (!names.insert(name).second) Fail(path, "duplicate identifier \"" + name + "\"");
    inst.item_names.push_back(name);
  }
  const int m = inst.num_items();

  const json& agents = Field(doc, "", "agents");
  if (!agents.is_array()) Fail("/agents", "expected an array");
  if (agents.empty()) Fail("/agents", "instance needs at least one agent");
  names.clear();
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "/agents/" + std::to_string(i);
    const json& name_node = Field(agents[i], path, "name");
    if (!name_node.is_string()) Fail(path + "/name", "expected a string");
    const std::string name = name_node.get<std::string>();
    if (!names.insert(name).second) {
      Fail(path + "/name", "duplicate identifier \"" + name + "\"");
    }
    inst.agent_names.push_back(name);
    inst.valuations.push_back(
        ParseValuation(Field(agents[i], path, "valuation"), path + "/valuation", m));
  }
  return inst;
}

Instance LoadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return LoadInstance(buf.str());
}

std::string SerializeInstance(const Instance& inst) {
  json doc;
  doc["items"] = inst.item_names;
  json agents = json::array();
  for (int i = 0; i < inst.num_agents(); ++i) {
    agents.push_back({{"name", inst.agent_names[i]},
                      {"valuation", ValuationToJson(inst.valuations[i])}});
  }
  doc["agents"] = std::move(agents);
  return doc.dump(2);
}

double GeometricMean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double log_sum = 0.0;
  for (double v : values) {
    if (v <= 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double NswValue(const Allocation& alloc, const Instance& inst) {
  std::vector<double> values;
  values.reserve(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) {
    values.push_back(inst.valuations[i].Value(alloc.bundles[i]));
  }
  return GeometricMean(values);
}

}  // namespace nsw
