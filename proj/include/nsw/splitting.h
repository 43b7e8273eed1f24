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

// Set splitting: drop low-value support sets of a configuration solution
// and cut the rest into parts of roughly equal value.

#ifndef NSW_SPLITTING_H_
#define NSW_SPLITTING_H_

#include <string>
#include <vector>

#include "nsw/model.h"

namespace nsw {

struct XosSplitOutput {
  // Parts are kept per source set, so one agent may list the same part
  // twice with different large items.
  ConfigSolution config;
  std::vector<std::vector<int>> large_item;  // parallel to config.columns
  std::vector<std::vector<int>> source;      // index of the source column
  std::vector<double> v_plus;
};

// Agents with an empty column list are skipped. For the others the
// columns must carry total weight 1 and v_plus[i] must equal
// sum_S v_i(S) x_{i,S}. Every valuation touched must be additive or XOS.
XosSplitOutput SplitXos(const ConfigSolution& x, const Instance& inst,
                        const std::vector<double>& v_plus);

struct SubaddSplitOutput {
  ConfigSolution config;  // weights sum to 1 per split agent
  std::vector<double> v;
  std::vector<double> nu;
  std::vector<int> agents;  // the agents that were split
};

// Every agent in `agents` needs V_i >= 6 nu_i, with nu_i bounding the
// singleton values of the items in its support.
SubaddSplitOutput SplitSubadditive(const ConfigSolution& x, const Instance& inst,
                                   const std::vector<int>& agents,
                                   const std::vector<double>& v,
                                   const std::vector<double>& nu);

// Empty string when every bound holds within tol, else a description of
// the first violation.
std::string CheckXosSplit(const XosSplitOutput& out, const Instance& inst,
                          double tol = 1e-9);
std::string CheckSubaddSplit(const SubaddSplitOutput& out, const Instance& inst,
                             double tol = 1e-9);

}  // namespace nsw

#endif  // NSW_SPLITTING_H_
