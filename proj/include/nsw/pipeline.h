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

// End-to-end NSW pipelines:
//
//   xos:         matching -> EG relaxation -> XOS split -> contention
//                rounding -> final matching
//   subadditive: matching -> EG relaxation -> V >= 6 nu filter ->
//                subadditive split -> iterated rounding -> final matching

#ifndef NSW_PIPELINE_H_
#define NSW_PIPELINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nsw/matching.h"
#include "nsw/model.h"
#include "nsw/relaxation.h"
#include "nsw/rounding.h"
#include "nsw/splitting.h"

namespace nsw {

struct PipelineParams {
  uint64_t seed = 0;
  double alpha = 0.25;
  EgParams eg;  // eg.alpha is overwritten by alpha
  // Rounding-procedure slack: when > 0, d = 2 / (1 - 2 epsilon).
  double epsilon = 0.0;
  double d = 0.0;      // > 0 overrides; else epsilon, else 4 (cr) / measured
  double delta = 0.0;  // > 0 overrides 1 / (7 d)
  std::string proc = "cr";
  bool rematch_check = false;
  bool fill_residual = false;
};

struct PipelineReport {
  std::string pipeline;
  PipelineParams params;
  double d = 0.0;
  double delta = 0.0;
  std::string d_source;  // "flag", "epsilon", "nominal", "measured"

  InitialMatching init;
  bool relaxed = false;  // false when A' is empty
  EgResult eg;
  std::vector<double> nu;
  std::vector<int> a_double_prime;

  XosSplitOutput xos_split;
  XosRoundOutcome xos_round;
  SubaddSplitOutput sub_split;
  IteratedOutcome iterated;

  Allocation before_matching;  // R_i or T_i
  Matching sigma;
  Allocation allocation;
  std::vector<double> values;
  double nsw = 0.0;
  std::map<std::string, double> stage_ms;
};

PipelineReport RunXos(const Instance& inst, const PipelineParams& params);
PipelineReport RunSubadditive(const Instance& inst, const PipelineParams& params);
PipelineReport RunPipeline(const std::string& name, const Instance& inst,
                           const PipelineParams& params);

// Gives each unallocated item, in index order, to the agent whose value
// grows by the largest factor (lowest index on ties, including when no
// agent gains). No item stays unallocated.
Allocation FillResidual(const Allocation& alloc, const Instance& inst);

// Deterministic JSON rendering; stage timings only when requested.
std::string ReportToJson(const PipelineReport& report, const Instance& inst,
                         bool include_timing = false);

// One JSON object per iterated-rounding round.
std::string RoundTraceJsonl(const PipelineReport& report);

}  // namespace nsw

#endif  // NSW_PIPELINE_H_
