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


// nsw-forge: generate instances, run the NSW pipelines, compare against the
// exact optimum, fuzz stage invariants and run concentration experiments.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 invariant violation,
// 3 oracle cap exceeded.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzz.h"
#include "json.hpp"
#include "nsw/concentration.h"
#include "nsw/errors.h"
#include "nsw/generators.h"
#include "nsw/oracle.h"
#include "nsw/parallel.h"
#include "nsw/pipeline.h"

namespace {

using nsw::InputError;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + out_path);
  out << text;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::vector<int> IntList(const std::string& s, const std::string& flag) {
  std::vector<int> out;
  for (const std::string& tok : SplitList(s)) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("bad integer \"" + tok + "\" in " + flag);
    }
  }
  if (out.empty()) throw InputError(flag + " needs at least one value");
  return out;
}

std::string Num(double x) {
  std::ostringstream ss;
  ss.precision(10);
  ss << x;
  return ss.str();
}

struct SolveFlags {
  std::string pipeline = "xos";
  uint64_t seed = 0;
  double alpha = 0.25;
  double epsilon = 0.0;
  double delta = 0.0;
  double d = 0.0;
  std::string proc = "cr";
  bool fill_residual = false;
  bool rematch_check = false;

  nsw::PipelineParams Params(uint64_t run_seed) const {
    nsw::PipelineParams p;
    p.seed = run_seed;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.delta = delta;
    p.d = d;
    p.proc = proc;
    p.fill_residual = fill_residual;
    p.rematch_check = rematch_check;
    return p;
  }
};

void AddSolveFlags(CLI::App* cmd, SolveFlags* f) {
  cmd->add_option("--pipeline", f->pipeline, "xos | subadditive")
      ->check(CLI::IsMember({"xos", "subadditive"}));
  cmd->add_option("--seed", f->seed, "master seed");
  cmd->add_option("--alpha", f->alpha, "relaxation accuracy")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", f->epsilon,
                  "rounding slack in (0, 1/2); sets d = 2 / (1 - 2 epsilon)");
  cmd->add_option("--delta", f->delta, "iterated-rounding exit fraction (default 1/(7d))");
  cmd->add_option("--d", f->d, "rounding-procedure factor (default 4 for cr, measured for oracle)");
  cmd->add_option("--proc", f->proc, "cr | oracle")->check(CLI::IsMember({"cr", "oracle"}));
  cmd->add_flag("--fill-residual", f->fill_residual,
                "hand unallocated items to the agents gaining most");
  cmd->add_flag("--rematch-check", f->rematch_check,
                "assert the rematching guarantee (subadditive)");
}

struct GenFlags {
  std::string families = "additive";
  std::string dist = "uniform";
  std::string n = "2";
  std::string m = "4";
  int clauses = 3;
  double cap_ratio = 0.5;

  void Add(CLI::App* cmd) {
    cmd->add_option("--family", families,
                    "additive | xos | budgeted | table | table_mixture (comma list)");
    cmd->add_option("--dist", dist, "uniform | integer | heavy");
    cmd->add_option("--n", n, "agents (comma list)");
    cmd->add_option("--m", m, "items (comma list)");
    cmd->add_option("--clauses", clauses, "clauses per XOS agent");
    cmd->add_option("--cap-ratio", cap_ratio, "budget cap / total weight");
  }

  // Instance `index` of a seeded batch; each list is sampled uniformly.
  nsw::GenSpec Draw(uint64_t seed, int index) const {
    nsw::RngStream rng(nsw::RunSeed(seed, index));
    const std::vector<std::string> fams = SplitList(families);
    if (fams.empty()) throw InputError("--family needs at least one value");
    const std::vector<int> ns = IntList(n, "--n");
    const std::vector<int> ms = IntList(m, "--m");
    nsw::GenSpec g;
    g.family = nsw::ParseFamily(fams[rng.UniformInt(fams.size())]);
    g.n = ns[rng.UniformInt(ns.size())];
    g.m = ms[rng.UniformInt(ms.size())];
    g.dist = nsw::ParseDist(dist);
    g.clauses = clauses;
    g.cap_ratio = cap_ratio;
    g.seed = rng.NextU64();
    nsw::ValidateGenSpec(g);
    return g;
  }
};

int CmdGen(const GenFlags& gf, const std::string& spec_path, uint64_t seed,
           bool seed_given, const std::string& out) {
  nsw::GenSpec g;
  if (!spec_path.empty()) {
    g = nsw::GenSpecFromJson(ReadFile(spec_path));
    if (seed_given) g.seed = seed;
  } else {
    g.family = nsw::ParseFamily(gf.families);
    g.dist = nsw::ParseDist(gf.dist);
    g.n = IntList(gf.n, "--n").front();
    g.m = IntList(gf.m, "--m").front();
    g.clauses = gf.clauses;
    g.cap_ratio = gf.cap_ratio;
    g.seed = seed;
  }
  Emit(out, nsw::SerializeInstance(nsw::Generate(g)));
  std::cerr << "generated " << nsw::FamilyName(g.family) << " instance, n=" << g.n
            << " m=" << g.m << " seed=" << g.seed << "\n";
  return 0;
}

int CmdSolve(const std::string& path, const SolveFlags& sf, const std::string& out,
             const std::string& trace, bool timing) {
  const nsw::Instance inst = nsw::LoadInstanceFile(path);
  const nsw::PipelineReport rep = nsw::RunPipeline(sf.pipeline, inst, sf.Params(sf.seed));
  Emit(out, nsw::ReportToJson(rep, inst, timing));
  if (!trace.empty()) {
    std::ofstream t(trace, std::ios::binary);
    if (!t) throw InputError("cannot write " + trace);
    t << nsw::RoundTraceJsonl(rep);
  }
  std::cerr << sf.pipeline << ": nsw " << Num(rep.nsw) << " (n=" << inst.num_agents()
            << ", m=" << inst.num_items() << ")\n";
  return 0;
}

int CmdExact(const std::string& path, bool config_lp, const std::string& out) {
  const nsw::Instance inst = nsw::LoadInstanceFile(path);
  const nsw::ExactResult ex = nsw::ExactNsw(inst);
  nlohmann::json doc;
  doc["nsw"] = ex.optimum;
  doc["nodes"] = ex.nodes;
  nlohmann::json alloc = nlohmann::json::array();
  for (int i = 0; i < inst.num_agents(); ++i) {
    nlohmann::json items = nlohmann::json::array();
    for (int j : ex.witness.bundles[i]) items.push_back(inst.item_names[j]);
    alloc.push_back({{"agent", inst.agent_names[i]},
                     {"items", items},
                     {"value", inst.valuation(i).Value(ex.witness.bundles[i])}});
  }
  doc["allocation"] = alloc;
  if (config_lp) doc["config_lp_welfare"] = nsw::ExactConfigLp(inst).optimum;
  Emit(out, doc.dump(2) + "\n");
  std::cerr << "exact nsw " << Num(ex.optimum) << " after " << ex.nodes << " assignments\n";
  return 0;
}

int CmdRatio(const GenFlags& gf, const std::string& dir, const SolveFlags& sf, int count,
             const std::string& out) {
  struct Job {
    std::string id;
    std::string family;
    nsw::Instance inst;
    uint64_t seed = 0;
  };
  std::vector<Job> jobs;
  if (!dir.empty()) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    if (ec) throw InputError("cannot read directory " + dir);
    if (files.empty()) throw InputError("no .json instances in " + dir);
    std::sort(files.begin(), files.end());
    for (size_t k = 0; k < files.size(); ++k) {
      jobs.push_back({files[k].filename().string(), "file",
                      nsw::LoadInstanceFile(files[k].string()),
                      nsw::RunSeed(sf.seed, static_cast<int>(k))});
    }
  } else {
    if (count < 1) throw InputError("--trials must be positive");
    for (int k = 0; k < count; ++k) {
      const nsw::GenSpec g = gf.Draw(sf.seed, k);
      jobs.push_back({std::to_string(k), nsw::FamilyName(g.family), nsw::Generate(g), g.seed});
    }
  }
  std::vector<double> got(jobs.size()), exact(jobs.size());
  nsw::ParallelFor(static_cast<int>(jobs.size()), [&](int k) {
    got[k] = nsw::RunPipeline(sf.pipeline, jobs[k].inst, sf.Params(jobs[k].seed)).nsw;
    exact[k] = nsw::ExactNsw(jobs[k].inst).optimum;
  });
  std::ostringstream csv;
  csv << "# schema=1\nid,family,n,m,nsw,exact,ratio\n";
  std::vector<double> ratios;
  for (size_t k = 0; k < jobs.size(); ++k) {
    const double r = exact[k] > 0.0 ? got[k] / exact[k] : 1.0;
    ratios.push_back(r);
    csv << jobs[k].id << "," << jobs[k].family << "," << jobs[k].inst.num_agents() << ","
        << jobs[k].inst.num_items() << "," << Num(got[k]) << "," << Num(exact[k]) << ","
        << Num(r) << "\n";
  }
  Emit(out, csv.str());
  std::sort(ratios.begin(), ratios.end());
  std::cerr << "ratio: " << ratios.size() << " instances, min " << Num(ratios.front())
            << ", median " << Num(ratios[(ratios.size() - 1) / 2]) << "\n";
  return 0;
}

int CmdFuzz(const std::string& module, int count, uint64_t seed) {
  if (count == 0) std::cerr << "warning: count is 0, nothing to check\n";
  const nsw::FuzzReport rep = nsw::RunFuzz(module, count, seed);
  for (const nsw::FuzzFailure& f : rep.failures) {
    std::cout << "FAIL run " << f.index << " seed " << f.seed << ": " << f.message << "\n";
  }
  std::cout << "fuzz " << module << ": " << rep.count - rep.failures.size() << "/"
            << rep.count << " passed\n";
  return rep.failures.empty() ? 0 : 2;
}

int CmdConc(const std::string& family, int functions, int max_m, int q, int k, int trials,
            uint64_t seed, const std::string& out) {
  if (trials < 1000) std::cerr << "warning: " << trials << " trials is low-power\n";
  if (max_m < 1 || max_m > nsw::kEnumerationCap) throw InputError("--m must lie in [1, 16]");
  std::vector<nsw::Family> fams;
  if (family == "all") {
    fams = {nsw::Family::kBudgeted, nsw::Family::kXos, nsw::Family::kTableMixture,
            nsw::Family::kAdditive, nsw::Family::kTable};
  } else {
    fams = {nsw::ParseFamily(family)};
  }
  std::ostringstream csv;
  csv << "# schema=1\nexperiment,family,check,q,k,empirical,bound,slack,pass\n";
  int failed = 0;
  int total = 0;
  for (int e = 0; e < functions; ++e) {
    nsw::RngStream rng(nsw::RunSeed(seed, e));
    nsw::GenSpec g;
    g.family = fams[e % fams.size()];
    g.m = std::max(1, max_m - static_cast<int>(rng.UniformInt(std::min(max_m, 7))));
    g.dist = static_cast<nsw::WeightDist>(rng.UniformInt(3));
    g.seed = rng.NextU64();
    nsw::RngStream vr(g.seed);
    nsw::TailExperiment exp;
    exp.f = nsw::GenerateValuation(g, vr);
    exp.base = nsw::ItemSet::Full(g.m);
    exp.prob.resize(g.m);
    for (double& p : exp.prob) p = 0.2 + 0.6 * rng.Uniform();
    exp.nu = 0.0;
    for (int j = 0; j < g.m; ++j) exp.nu = std::max(exp.nu, exp.f.Singleton(j));
    if (exp.nu <= 0.0) exp.nu = 1.0;
    exp.trials = trials;
    exp.q = q;
    exp.k = k;
    exp.seed = rng.NextU64();
    for (const nsw::CheckResult& c : nsw::RunAllChecks(exp)) {
      ++total;
      failed += !c.pass;
      csv << e << "," << nsw::FamilyName(g.family) << "," << c.name << "," << q << "," << k
          << "," << Num(c.empirical) << "," << Num(c.bound) << "," << Num(c.slack) << ","
          << (c.pass ? "pass" : "FAIL") << "\n";
    }
  }
  csv << "# cascade_product_40," << Num(nsw::CascadeProduct(40)) << "\n";
  Emit(out, csv.str());
  std::cerr << "conc: " << total - failed << "/" << total << " checks passed over "
            << functions << " functions\n";
  return failed == 0 ? 0 : 2;
}

int CmdReport(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": malformed report JSON: " + e.what());
  }
  if (!doc.contains("pipeline") || !doc.contains("allocation")) {
    throw InputError(path + ": not a solve report");
  }
  std::ostringstream s;
  s << "pipeline " << doc["pipeline"].get<std::string>() << ", n=" << doc.value("n", 0)
    << ", m=" << doc.value("m", 0) << ", nsw " << Num(doc.value("nsw", 0.0)) << "\n";
  for (const auto& a : doc["allocation"]) {
    std::string items;
    for (const auto& it : a["items"]) items += (items.empty() ? "" : " ") + it.get<std::string>();
    s << "  " << a["agent"].get<std::string>() << ": {" << items << "} value "
      << Num(a["value"].get<double>()) << "\n";
  }
  const auto& st = doc.value("stages", nlohmann::json::object());
  if (st.contains("relaxation")) {
    const auto& r = st["relaxation"];
    s << "  relaxation: " << r.value("iterations", 0) << " iterations, stop "
      << r.value("stop_reason", std::string()) << ", ratio bound "
      << Num(r.value("ratio_bound", 0.0)) << "\n";
  }
  if (st.contains("rounds")) {
    s << "  iterated rounding: " << st["rounds"].get<int>() << " rounds, "
      << st.value("shortfall_rounds", 0) << " short\n";
  }
  std::cout << s.str();
  return 0;
}

int Run(int argc, char** argv) {
  CLI::App app{"Nash social welfare solver for XOS and subadditive valuations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nsw-forge 0.1.0");

  uint64_t seed = 0;
  std::string out;
  GenFlags gf;
  SolveFlags sf;

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  std::string spec_path;
  gf.Add(gen);
  gen->add_option("--spec", spec_path, "GenSpec JSON file (overrides the flags)");
  CLI::Option* gen_seed = gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output path (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "run a pipeline on one instance");
  std::string instance;
  std::string trace;
  bool timing = false;
  solve->add_option("instance", instance, "instance JSON")->required();
  AddSolveFlags(solve, &sf);
  solve->add_option("--out", out, "report path (default stdout)");
  solve->add_option("--trace", trace, "JSON-lines trace of iterated-rounding rounds");
  solve->add_flag("--timing", timing, "include per-stage timings in the report");

  CLI::App* exact = app.add_subcommand("exact", "exact NSW by enumeration");
  bool config_lp = false;
  exact->add_option("instance", instance, "instance JSON")->required();
  exact->add_flag("--config-lp", config_lp, "also report the configuration LP welfare");
  exact->add_option("--out", out, "output path (default stdout)");

  CLI::App* ratio = app.add_subcommand("ratio", "pipeline NSW against the exact optimum");
  std::string dir;
  int trials = 0;
  gf.Add(ratio);
  AddSolveFlags(ratio, &sf);
  ratio->add_option("--instances", dir, "directory of instance JSON files");
  ratio->add_option("--trials", trials, "number of generated instances");
  ratio->add_option("--out", out, "CSV path (default stdout)");

  CLI::App* fuzz = app.add_subcommand("fuzz", "fuzz one module's invariants");
  std::string module;
  int count = 100;
  fuzz->add_option("module", module, "split | round | relax | match")->required();
  fuzz->add_option("count", count, "number of runs");
  fuzz->add_option("--seed", seed, "master seed");

  CLI::App* conc = app.add_subcommand("conc", "concentration-bound experiments");
  std::string conc_family = "all";
  int functions = 20;
  int max_m = 14;
  int q = 2;
  int k = 3;
  int conc_trials = 100000;
  conc->add_option("--family", conc_family, "valuation family or \"all\"");
  conc->add_option("--functions", functions, "number of random functions");
  conc->add_option("--m", max_m, "largest ground set");
  conc->add_option("--q", q, "tail parameter q")->check(CLI::PositiveNumber);
  conc->add_option("--k", k, "tail parameter k")->check(CLI::PositiveNumber);
  conc->add_option("--trials", conc_trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  conc->add_option("--seed", seed, "master seed");
  conc->add_option("--out", out, "CSV path (default stdout)");

  CLI::App* report = app.add_subcommand("report", "summarize a solve report");
  std::string report_path;
  report->add_option("report", report_path, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) return CmdGen(gf, spec_path, seed, gen_seed->count() > 0, out);
  if (solve->parsed()) return CmdSolve(instance, sf, out, trace, timing);
  if (exact->parsed()) return CmdExact(instance, config_lp, out);
  if (ratio->parsed()) {
    if (dir.empty() && trials == 0) trials = 200;
    return CmdRatio(gf, dir, sf, trials, out);
  }
  if (fuzz->parsed()) return CmdFuzz(module, count, seed);
  if (conc->parsed()) {
    return CmdConc(conc_family, functions, max_m, q, k, conc_trials, seed, out);
  }
  if (report->parsed()) return CmdReport(report_path);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const nsw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
