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

// Command implementations behind tools/ftfix. Each returns the process exit
// code (0 ok, 2 bound exceeded without a plan) and throws ftfix::Error on
// failure, which the driver maps to exit code 1.

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ftfix/bench.hpp"
#include "ftfix/blueprint.hpp"
#include "ftfix/detect.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/graph_io.hpp"
#include "ftfix/injector.hpp"
#include "ftfix/oracle.hpp"

namespace ftfix::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBoundExceeded = 2;

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create directory " + dir.string());
}

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path.string());
}

inline std::string summary(const DeviceGraph& g) {
  return std::to_string(g.size()) + " devices, " + std::to_string(g.edge_count()) + " connections";
}

// DIR/graph.json, DIR/roles.json, DIR/addresses.json
inline int cmd_generate(int k, const fs::path& out_dir, std::ostream& os) {
  const FatTreeParams p(k);
  const Blueprint bp = generate_blueprint(p);
  ensure_dir(out_dir);
  save_graph(out_dir / "graph.json", bp.graph);
  write_file(out_dir / "roles.json", role_table_json(bp.assignment, bp.graph.device_ids()).dump(1) + "\n");
  write_file(out_dir / "addresses.json",
             to_json(autoconfigure(bp.assignment), bp.graph.device_ids()).dump(1) + "\n");
  os << "FatTree(" << k << "): " << summary(bp.graph) << '\n';
  return kExitOk;
}

// DIR/graph.json, DIR/diff.json
inline int cmd_inject(const fs::path& graph_path, const MalfunctionSpec& spec, const fs::path& out_dir,
                      std::ostream& os) {
  const DeviceGraph g = load_graph(graph_path);
  const Injection inj = inject(g, spec);
  ensure_dir(out_dir);
  save_graph(out_dir / "graph.json", inj.graph);
  write_file(out_dir / "diff.json", to_json(inj.diff).dump() + "\n");
  os << "injected " << inj.diff.removed.size() << " removals, " << inj.diff.added.size()
     << " additions: " << summary(inj.graph) << '\n';
  return kExitOk;
}

struct DetectOptions {
  DetectMode mode = DetectMode::kAuto;
  std::optional<fs::path> out_dir;  // plan.jsonl, roles.json, addresses.json, report.json
  std::size_t repeat = 1;
};

inline int cmd_detect(const fs::path& graph_path, const DetectOptions& opt, std::ostream& os) {
  const DeviceGraph g = load_graph(graph_path);
  DetectReport report = detect(g, opt.mode);
  if (opt.repeat > 1) {
    std::vector<double> times{report.seconds};
    for (std::size_t i = 1; i < opt.repeat; ++i) times.push_back(detect(g, opt.mode).seconds);
    report.seconds = median(std::move(times));
  }

  const std::size_t steps = report.plan.steps();
  const std::size_t faults = report.plan.actions.size() - steps;
  os << "FatTree(" << report.params.k() << "): " << summary(g) << '\n';
  if (report.bound_exceeded) os << "algo2: bound exceeded (" << *report.bound_exceeded << ")\n";
  if (!report.ok()) {
    os << "no plan\n";
    return kExitBoundExceeded;
  }
  os << "algo" << report.algo << ": " << steps << " malfunctions"
     << (report.beyond_bound ? " (beyond the exact bound; plan is feasible)" : "") << '\n';
  if (faults) os << faults << " edge switches with a wrong server count\n";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.6f", report.seconds);
  os << "time: " << secs << " s\n";

  if (!opt.out_dir) {
    write_plan(os, report.plan, g);
    return kExitOk;
  }
  ensure_dir(*opt.out_dir);
  std::ofstream plan_out(*opt.out_dir / "plan.jsonl", std::ios::binary);
  write_plan(plan_out, report.plan, g);
  if (!plan_out) throw InputError("cannot write " + (*opt.out_dir / "plan.jsonl").string());
  write_file(*opt.out_dir / "roles.json", role_table_json(*report.assignment, g.device_ids()).dump(1) + "\n");
  write_file(*opt.out_dir / "addresses.json",
             to_json(autoconfigure(*report.assignment), g.device_ids()).dump(1) + "\n");
  nlohmann::json summary_json = {{"k", report.params.k()},
                                 {"algo", report.algo},
                                 {"steps", steps},
                                 {"server_faults", faults},
                                 {"beyond_bound", report.beyond_bound},
                                 {"seconds", report.seconds}};
  if (report.bound_exceeded) summary_json["algo2_bound_exceeded"] = *report.bound_exceeded;
  write_file(*opt.out_dir / "report.json", summary_json.dump(1) + "\n");
  return kExitOk;
}

struct OracleOptions {
  std::string mode = "fattree";  // fattree | mgdp
  fs::path graph;
  std::optional<fs::path> graph2;  // mgdp only
  std::size_t budget = oracle::MinFixOptions{}.node_budget;
};

inline int cmd_oracle(const OracleOptions& opt, std::ostream& os) {
  const DeviceGraph g = load_graph(opt.graph);
  if (opt.mode == "mgdp") {
    if (!opt.graph2) throw UsageError("oracle --mode mgdp needs a second graph");
    const DeviceGraph g2 = load_graph(*opt.graph2);
    const auto sol = oracle::mgdp_bruteforce(g, g2);
    os << "min d: " << sol.difference << '\n' << "bijection:";
    for (NodeId t : sol.bijection) os << ' ' << t;
    os << '\n';
    return kExitOk;
  }
  if (opt.mode == "fattree") {
    oracle::MinFixOptions mo;
    mo.node_budget = opt.budget;
    const auto res = oracle::fattree_minfix_search(g, mo);
    os << "min steps: " << res.steps << '\n' << "nodes explored: " << res.nodes_explored << '\n';
    return kExitOk;
  }
  throw UsageError("unknown oracle mode '" + opt.mode + "' (expected mgdp or fattree)");
}

inline int cmd_bench(const BenchConfig& cfg, const std::optional<fs::path>& out_csv, std::ostream& os) {
  const auto records = run_bench(cfg);
  if (out_csv) {
    if (out_csv->has_parent_path()) ensure_dir(out_csv->parent_path());
    std::ofstream out(*out_csv, std::ios::binary);
    if (!out) throw InputError("cannot write " + out_csv->string());
    write_csv(out, records);
    os << records.size() << " rows written to " << out_csv->string() << '\n';
  } else {
    write_csv(os, records);
  }
  return kExitOk;
}

}  // namespace ftfix::cli
