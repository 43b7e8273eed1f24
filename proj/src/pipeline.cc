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

#include "nsw/pipeline.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nsw/errors.h"

namespace nsw {
namespace {

using json = nlohmann::json;

constexpr uint64_t kStageRounding = 11;

class StageTimer {
 public:
  StageTimer(std::map<std::string, double>* sink, std::string name)
      : sink_(sink), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    (*sink_)[name_] += std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
  }

 private:
  std::map<std::string, double>* sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

// Relaxation columns as a configuration solution over the active agents.
ConfigSolution ColumnsOf(const EgResult& eg, const std::vector<int>& agents,
                         int num_agents) {
  ConfigSolution x(num_agents);
  for (int i : agents) x.columns[i] = eg.ext[i].columns;
  return x;
}

void RunFront(const Instance& inst, const PipelineParams& params,
              PipelineReport* rep) {
  {
    StageTimer timer(&rep->stage_ms, "matching");
    rep->init = ComputeInitialMatching(inst);
  }
  if (rep->init.active.empty()) return;
  StageTimer timer(&rep->stage_ms, "relaxation");
  EgParams eg = params.eg;
  eg.alpha = params.alpha;
  rep->eg = SolveEg(inst, rep->init.active, rep->init.rest, eg);
  rep->relaxed = true;
}

void Finish(const Instance& inst, const PipelineParams& params,
            PipelineReport* rep) {
  {
    StageTimer timer(&rep->stage_ms, "final_matching");
    rep->allocation = FinalizeWithMatching(rep->before_matching, rep->init.h,
                                           inst, &rep->sigma);
  }
  if (params.fill_residual) rep->allocation = FillResidual(rep->allocation, inst);
  NSW_CHECK(rep->allocation.IsValid(inst.num_items()), "output allocation is invalid");
  rep->values.resize(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) {
    rep->values[i] = inst.valuation(i).Value(rep->allocation.bundles[i]);
  }
  rep->nsw = NswValue(rep->allocation, inst);
}

json SetJson(ItemSet s) { return s.ToVector(); }

json ColumnsJson(const ConfigSolution& x, int i) {
  json arr = json::array();
  for (const Column& c : x.columns[i]) {
    arr.push_back({{"items", SetJson(c.set)}, {"weight", c.weight}});
  }
  return arr;
}

}  // namespace

Allocation FillResidual(const Allocation& alloc, const Instance& inst) {
  Allocation out = alloc;
  const ItemSet left = inst.all_items() - alloc.Allocated();
  for (int j : left) {
    int best = 0;
    double best_gain = -1.0;
    for (int i = 0; i < inst.num_agents(); ++i) {
      const Valuation& v = inst.valuation(i);
      const double before = v.Value(out.bundles[i]);
      ItemSet with = out.bundles[i];
      with.Insert(j);
      const double after = v.Value(with);
      double gain = 0.0;
      if (after > before) {
        gain = before > 0.0 ? std::log(after / before)
                            : std::numeric_limits<double>::infinity();
      }
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    out.bundles[best].Insert(j);
  }
  return out;
}

PipelineReport RunXos(const Instance& inst, const PipelineParams& params) {
  for (int i = 0; i < inst.num_agents(); ++i) {
    NSW_REQUIRE(inst.valuation(i).IsXosRepresented(),
                "pipeline requires XOS valuations (agent " + inst.agent_names[i] +
                    " is " + KindName(inst.valuation(i).kind()) + ")");
  }
  PipelineReport rep;
  rep.pipeline = "xos";
  rep.params = params;
  RunFront(inst, params, &rep);
  const int n = inst.num_agents();
  rep.before_matching = Allocation(n);
  if (rep.relaxed) {
    {
      StageTimer timer(&rep.stage_ms, "splitting");
      rep.xos_split = SplitXos(ColumnsOf(rep.eg, rep.init.active, n), inst,
                               rep.eg.v_plus);
    }
    StageTimer timer(&rep.stage_ms, "rounding");
    rep.xos_round = RoundXos(rep.xos_split, inst,
                             RngStream(params.seed).Substream(kStageRounding));
    rep.before_matching = rep.xos_round.r;
  }
  Finish(inst, params, &rep);
  return rep;
}

PipelineReport RunSubadditive(const Instance& inst, const PipelineParams& params) {
  PipelineReport rep;
  rep.pipeline = "subadditive";
  rep.params = params;
  const int n = inst.num_agents();
  std::unique_ptr<RoundingProcedure> proc = MakeProcedure(params.proc);
  RunFront(inst, params, &rep);
  rep.before_matching = Allocation(n);
  rep.nu.assign(n, 0.0);
  for (int i = 0; i < n; ++i) rep.nu[i] = inst.valuation(i).SingletonMax(rep.init.rest);
  if (rep.relaxed) {
    for (int i : rep.init.active) {
      if (rep.eg.v_plus[i] >= 6.0 * rep.nu[i] - 1e-12 * rep.eg.v_plus[i]) {
        rep.a_double_prime.push_back(i);
      }
    }
  }
  if (params.d > 0.0) {
    rep.d = params.d;
    rep.d_source = "flag";
  } else if (params.epsilon > 0.0) {
    NSW_REQUIRE(params.epsilon < 0.5, "epsilon must lie in (0, 1/2)");
    rep.d = 2.0 / (1.0 - 2.0 * params.epsilon);
    rep.d_source = "epsilon";
  } else if (params.proc == "cr") {
    rep.d = 4.0;
    rep.d_source = "nominal";
  }
  if (!rep.a_double_prime.empty()) {
    {
      StageTimer timer(&rep.stage_ms, "splitting");
      rep.sub_split = SplitSubadditive(ColumnsOf(rep.eg, rep.a_double_prime, n), inst,
                                       rep.a_double_prime, rep.eg.v_plus, rep.nu);
    }
    StageTimer timer(&rep.stage_ms, "rounding");
    if (rep.d <= 0.0) {
      std::vector<double> v_prime(n, 0.0);
      for (int i : rep.a_double_prime) {
        for (const Column& c : rep.sub_split.config.columns[i]) {
          v_prime[i] += c.weight * inst.valuation(i).Value(c.set);
        }
      }
      rep.d = MeasureOracleD(rep.sub_split.config, rep.a_double_prime, inst, v_prime);
      rep.d_source = "measured";
    }
    rep.delta = params.delta > 0.0 ? params.delta : 1.0 / (7.0 * rep.d);
    rep.iterated = IteratedRound(rep.sub_split, rep.init.rest, rep.delta, *proc, inst,
                                 RngStream(params.seed).Substream(kStageRounding));
    rep.before_matching = rep.iterated.t;
  } else if (rep.d > 0.0) {
    rep.delta = params.delta > 0.0 ? params.delta : 1.0 / (7.0 * rep.d);
  }
  Finish(inst, params, &rep);

  if (params.rematch_check) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = inst.valuation(i).Value(rep.before_matching.bundles[i]);
    const Rematch re = RematchRho(rep.init.tau, rep.init.tau, w, rep.nu, inst);
    NSW_CHECK(RematchGuaranteeHolds(re.rho, rep.init.tau, w, rep.nu, inst, 1e-9),
              "rematching guarantee failed");
    Allocation with_rho = rep.before_matching;
    for (int i = 0; i < n; ++i) with_rho.bundles[i].Insert(re.rho.item_of[i]);
    const double rho_nsw = NswValue(with_rho, inst);
    NSW_CHECK(rep.nsw >= rho_nsw * (1.0 - 1e-9),
              "final matching is worse than the rematching witness");
  }
  return rep;
}

PipelineReport RunPipeline(const std::string& name, const Instance& inst,
                           const PipelineParams& params) {
  if (name == "xos") return RunXos(inst, params);
  if (name == "subadditive") return RunSubadditive(inst, params);
  throw InputError("unknown pipeline \"" + name + "\" (expected xos|subadditive)");
}

std::string ReportToJson(const PipelineReport& rep, const Instance& inst,
                         bool include_timing) {
  const int n = inst.num_agents();
  json doc;
  doc["pipeline"] = rep.pipeline;
  doc["n"] = n;
  doc["m"] = inst.num_items();
  doc["nsw"] = rep.nsw;
  json params;
  params["seed"] = rep.params.seed;
  params["alpha"] = rep.params.alpha;
  params["proc"] = rep.params.proc;
  params["epsilon"] = rep.params.epsilon;
  params["fill_residual"] = rep.params.fill_residual;
  if (rep.relaxed) params["eg_epsilon"] = rep.eg.epsilon;
  if (rep.pipeline == "subadditive") {
    params["d"] = rep.d;
    params["d_source"] = rep.d_source;
    params["delta"] = rep.delta;
  }
  doc["params"] = params;

  json agents = json::array();
  for (int i = 0; i < n; ++i) {
    json items = json::array();
    for (int j : rep.allocation.bundles[i]) items.push_back(inst.item_names[j]);
    agents.push_back({{"agent", inst.agent_names[i]},
                      {"items", items},
                      {"value", rep.values[i]},
                      {"matched_item", inst.item_names[rep.sigma.item_of[i]]}});
  }
  doc["allocation"] = agents;

  json stages;
  stages["tau"] = rep.init.tau.item_of;
  stages["h"] = SetJson(rep.init.h);
  stages["rest"] = SetJson(rep.init.rest);
  stages["active"] = rep.init.active;
  if (rep.relaxed) {
    json relax;
    relax["objective"] = rep.eg.objective;
    relax["iterations"] = rep.eg.iterations;
    relax["stop_reason"] = rep.eg.stop_reason;
    relax["fw_gap"] = rep.eg.fw_gap;
    relax["ratio_bound"] = rep.eg.ratio_bound;
    relax["v_plus"] = rep.eg.v_plus;
    relax["x"] = rep.eg.x.mass;
    stages["relaxation"] = relax;
  }
  if (rep.pipeline == "xos" && rep.relaxed) {
    json split = json::array();
    json round = json::array();
    for (int i = 0; i < n; ++i) {
      json cols = ColumnsJson(rep.xos_split.config, i);
      for (size_t c = 0; c < cols.size(); ++c) {
        cols[c]["large_item"] = rep.xos_split.large_item[i][c];
      }
      split.push_back(cols);
      round.push_back({{"tentative", SetJson(rep.xos_round.tentative[i])},
                       {"won", SetJson(rep.xos_round.r.bundles[i])},
                       {"large_item", rep.xos_round.large_item[i]}});
    }
    stages["split"] = split;
    stages["rounding"] = round;
  }
  if (rep.pipeline == "subadditive") {
    stages["nu"] = rep.nu;
    stages["a_double_prime"] = rep.a_double_prime;
    if (!rep.a_double_prime.empty()) {
      json split = json::array();
      json round = json::array();
      for (int i = 0; i < n; ++i) {
        split.push_back(ColumnsJson(rep.sub_split.config, i));
        round.push_back({{"exit_round", rep.iterated.exit_round[i]},
                         {"exit_set", SetJson(rep.iterated.exit_set[i])},
                         {"kept", SetJson(rep.iterated.t.bundles[i])},
                         {"v_prime", rep.iterated.v_prime[i]}});
      }
      stages["split"] = split;
      stages["rounding"] = round;
      stages["rounds"] = rep.iterated.rounds.size();
      stages["round_cap"] = rep.iterated.round_cap;
      stages["shortfall_rounds"] = rep.iterated.shortfall_rounds;
      stages["unfinished"] = rep.iterated.unfinished;
    }
  }
  stages["sigma"] = rep.sigma.item_of;
  doc["stages"] = stages;
  if (include_timing) doc["stage_ms"] = rep.stage_ms;
  return doc.dump(2) + "\n";
}

std::string RoundTraceJsonl(const PipelineReport& rep) {
  std::ostringstream out;
  for (const RoundLog& r : rep.iterated.rounds) {
    json line;
    line["round"] = r.round;
    line["active"] = r.active.size();
    line["agents"] = r.active;
    line["ratio"] = r.ratio;
    line["exited"] = r.exited;
    line["required"] = r.required;
    out << line.dump() << "\n";
  }
  return out.str();
}

}  // namespace nsw
