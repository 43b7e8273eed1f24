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


// Invariant fuzz suites behind `nsw-forge fuzz`.

#ifndef NSW_TOOLS_FUZZ_H_
#define NSW_TOOLS_FUZZ_H_

#include <cstdint>
#include <string>
#include <vector>

namespace nsw {

struct FuzzFailure {
  int index = 0;
  uint64_t seed = 0;
  std::string message;
};

struct FuzzReport {
  std::string module;
  int count = 0;
  std::vector<FuzzFailure> failures;  // ascending index
};

// Seed of run `index` under master seed `seed`.
uint64_t RunSeed(uint64_t seed, int index);

// module: split | round | relax | match. Throws InputError for others.
FuzzReport RunFuzz(const std::string& module, int count, uint64_t seed);

// Runs one case with the given run seed; returns "" or the violation.
std::string FuzzCase(const std::string& module, uint64_t run_seed);

}  // namespace nsw

#endif  // NSW_TOOLS_FUZZ_H_
