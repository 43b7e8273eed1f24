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


#include <string>

#include "doctest.h"
#include "nsw/errors.h"
#include "nsw/generators.h"
#include "nsw/model.h"

namespace nsw {
namespace {

std::string LoadError(const std::string& doc) {
  try {
    LoadInstance(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("load minimal instance") {
  const Instance inst = LoadInstance(R"({
    "items": ["a", "b"],
    "agents": [
      {"name": "x", "valuation": {"kind": "additive", "weights": [1, 2]}},
      {"name": "y", "valuation": {"kind": "additive", "weights": [2, 1]}}]})");
  CHECK(inst.num_agents() == 2);
  CHECK(inst.num_items() == 2);
  CHECK(inst.valuation(1).Value(ItemSet{0}) == 2.0);
}

TEST_CASE("load xos and table") {
  const Instance inst = LoadInstance(R"({
    "items": ["a", "b", "c", "d"],
    "agents": [
      {"name": "x", "valuation": {"kind": "budgeted_additive", "weights": [1, 1, 1, 1], "cap": 2}},
      {"name": "y", "valuation": {"kind": "xos", "clauses": [[1,0,0,0],[0,1,0,0],[0,0,1,1]]}}]})");
  REQUIRE(inst.valuation(1).as_xos() != nullptr);
  CHECK(inst.valuation(1).as_xos()->clauses.size() == 3);

  const Instance t = LoadInstance(R"({
    "items": ["a", "b"],
    "agents": [{"name": "x", "valuation": {"kind": "table",
      "values": {"": 0, "0": 1, "1": 2, "0,1": 2.5}}}]})");
  CHECK(t.valuation(0).Value(ItemSet{0, 1}) == 2.5);
}

TEST_CASE("load errors") {
  CHECK(LoadError(R"({"items": ["a"], "agents": [{"name": "x",
    "valuation": {"kind": "additive", "weights": [-1]}}]})")
            .find("negative weight") != std::string::npos);
  CHECK(LoadError(R"({"items": ["a"], "agents": [{"name": "x",
    "valuation": {"kind": "additive", "weights": [-1]}}]})")
            .find("/agents/0/valuation/weights/0") == 0);
  CHECK(LoadError("{").find("malformed JSON") != std::string::npos);
  CHECK(LoadError(R"({"items": ["a", "a"], "agents": []})").find("duplicate") !=
        std::string::npos);
  CHECK(LoadError(R"({"items": ["a"]})").find("missing") != std::string::npos);
  CHECK(LoadError(R"({"items": ["a"], "agents": [{"name": "x",
    "valuation": {"kind": "additive", "weights": [1, 2]}}]})") != "");
  CHECK(LoadError(R"({"items": ["a", "b"], "agents": [{"name": "x",
    "valuation": {"kind": "table", "values": {"": 0, "0": 1, "1": 1}}}]})")
            .find("missing subset key") != std::string::npos);
  CHECK(LoadError(R"({"items": ["a", "b"], "agents": [{"name": "x",
    "valuation": {"kind": "table", "values": {"": 0, "0": 1, "1": 1, "0,1": 3}}}]})")
            .find("not a valuation") != std::string::npos);
  CHECK(LoadError(R"({"items": ["a"], "agents": [{"name": "x",
    "valuation": {"kind": "magic"}}]})")
            .find("unknown valuation kind") != std::string::npos);
}

TEST_CASE("serialization round trip") {
  for (int f = 0; f < 5; ++f) {
    GenSpec g;
    g.family = static_cast<Family>(f);
    g.n = 2;
    g.m = 5;
    g.seed = 11 + f;
    const Instance inst = Generate(g);
    const std::string text = SerializeInstance(inst);
    const Instance back = LoadInstance(text);
    CHECK(SerializeInstance(back) == text);
    for (uint64_t mask = 0; mask < 32; ++mask) {
      for (int i = 0; i < 2; ++i) {
        CHECK(back.valuation(i).Value(ItemSet(mask)) ==
              inst.valuation(i).Value(ItemSet(mask)));
      }
    }
  }
}

TEST_CASE("nsw value") {
  const Instance two = Instance::FromValuations({Additive{{4, 0}}, Additive{{0, 9}}}, 2);
  Allocation a(2);
  a.bundles = {ItemSet{0}, ItemSet{1}};
  CHECK(NswValue(a, two) == doctest::Approx(6.0));
  a.bundles = {ItemSet{0, 1}, ItemSet{}};
  CHECK(NswValue(a, two) == 0.0);

  const Instance three = Instance::FromValuations(
      {Additive{{1, 0, 0}}, Additive{{0, 8, 0}}, Additive{{0, 0, 27}}}, 3);
  Allocation b(3);
  b.bundles = {ItemSet{0}, ItemSet{1}, ItemSet{2}};
  CHECK(NswValue(b, three) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("allocation and matching helpers") {
  Allocation a(2);
  a.bundles = {ItemSet{0, 1}, ItemSet{1}};
  CHECK_FALSE(a.IsValid(3));
  a.bundles = {ItemSet{0}, ItemSet{3}};
  CHECK_FALSE(a.IsValid(3));
  a.bundles = {ItemSet{0}, ItemSet{2}};
  CHECK(a.IsValid(3));
  CHECK(a.Allocated() == ItemSet{0, 2});
  Matching m(3);
  m.item_of = {2, 0, 2};
  CHECK_FALSE(m.IsInjective());
  m.item_of = {2, 0, Matching::kUnmatched};
  CHECK(m.IsInjective());
  CHECK(m.Range() == ItemSet{0, 2});
}

}  // namespace
}  // namespace nsw
