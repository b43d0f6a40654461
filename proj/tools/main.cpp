// Copyright 2026 The ftfix Authors
//
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

// ftfix: generate, inject, detect, bench and oracle subcommands.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ftfix/cli.hpp"

namespace {

using namespace ftfix;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0)
      throw UsageError(std::string(flag) + ": '" + item + "' is not a non-negative integer");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

Scope parse_scope(const std::string& s) {
  if (s == "switch") return Scope::kSwitchLinksOnly;
  if (s == "all") return Scope::kIncludeServerLinks;
  throw UsageError("--scope must be 'switch' or 'all', got '" + s + "'");
}

DetectMode parse_mode(const std::string& s) {
  if (s == "1") return DetectMode::kAlgo1;
  if (s == "2") return DetectMode::kAlgo2;
  if (s == "auto") return DetectMode::kAuto;
  if (s == "race") return DetectMode::kRace;
  throw UsageError("--algo must be 1, 2, auto or race, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FatTree link-malfunction detection, minimum fixation and address autoconfiguration"};
  app.require_subcommand(1);

  int gen_k = 0;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("generate", "write a FatTree(k) blueprint, role table and addresses");
  gen->add_option("--k", gen_k, "switch port count (even, >= 4)")->required();
  gen->add_option("--out", gen_out, "output directory");

  std::string inj_graph, inj_out = ".", inj_scope = "switch";
  MalfunctionSpec spec;
  auto* inj = app.add_subcommand("inject", "inject seeded link malfunctions");
  inj->add_option("--graph", inj_graph, "input graph (JSON or text)")->required();
  inj->add_option("--seed", spec.seed, "random seed");
  inj->add_option("--removals", spec.removals, "links to remove");
  inj->add_option("--additions", spec.additions, "links to add");
  inj->add_option("--swaps", spec.swaps, "degree-preserving link swaps");
  inj->add_option("--scope", inj_scope, "switch (default) or all");
  inj->add_option("--out", inj_out, "output directory");

  std::string det_graph, det_algo = "auto", det_out;
  std::size_t det_repeat = 1;
  auto* det = app.add_subcommand("detect", "locate malfunctions and print a fixation plan");
  det->add_option("--graph", det_graph, "physical graph (JSON or text)")->required();
  det->add_option("--algo", det_algo, "1, 2, auto (default) or race");
  det->add_option("--out", det_out, "write plan.jsonl, roles.json, addresses.json, report.json here");
  det->add_option("--repeat", det_repeat, "report the median time over this many runs");

  std::string bench_k, bench_x, bench_algo = "1,2", bench_out, bench_scope = "switch";
  BenchConfig cfg;
  auto* bench = app.add_subcommand("bench", "timing and accuracy grid as CSV");
  bench->add_option("--k", bench_k, "comma-separated k values")->required();
  bench->add_option("--x", bench_x, "comma-separated malfunction counts (default grid per algorithm)");
  bench->add_option("--algo", bench_algo, "comma-separated algorithms (1,2)");
  bench->add_option("--trials", cfg.trials, "trials per cell");
  bench->add_option("--seed", cfg.seed, "seed of trial 0; trial t uses seed + t");
  bench->add_option("--repeat", cfg.repeat, "runs per trial; the median time is reported");
  bench->add_option("--scope", bench_scope, "switch (default) or all");
  bench->add_option("--out", bench_out, "CSV path (stdout when omitted)");

  cli::OracleOptions oopt;
  std::string oracle_graph, oracle_graph2;
  auto* orc = app.add_subcommand("oracle", "exhaustive solvers for tiny instances");
  orc->add_option("--mode", oopt.mode, "fattree (k=4 minimum fix steps) or mgdp");
  orc->add_option("--graph", oracle_graph, "graph file")->required();
  orc->add_option("--graph2", oracle_graph2, "second graph file (mgdp)");
  orc->add_option("--budget", oopt.budget, "search node budget (fattree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitError;
  }

  try {
    if (*gen) return cli::cmd_generate(gen_k, gen_out, std::cout);
    if (*inj) {
      spec.scope = parse_scope(inj_scope);
      return cli::cmd_inject(inj_graph, spec, inj_out, std::cout);
    }
    if (*det) {
      cli::DetectOptions opt;
      opt.mode = parse_mode(det_algo);
      opt.repeat = det_repeat;
      if (!det_out.empty()) opt.out_dir = det_out;
      return cli::cmd_detect(det_graph, opt, std::cout);
    }
    if (*bench) {
      cfg.ks = parse_list<int>(bench_k, "--k");
      cfg.algos = parse_list<int>(bench_algo, "--algo");
      if (!bench_x.empty()) cfg.xs = parse_list<std::size_t>(bench_x, "--x");
      cfg.scope = parse_scope(bench_scope);
      std::optional<std::filesystem::path> out;
      if (!bench_out.empty()) out = bench_out;
      return cli::cmd_bench(cfg, out, std::cout);
    }
    if (*orc) {
      oopt.graph = oracle_graph;
      if (!oracle_graph2.empty()) oopt.graph2 = oracle_graph2;
      return cli::cmd_oracle(oopt, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitError;
  }
  return cli::kExitError;
}
