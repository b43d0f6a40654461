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

// Seeded benchmark grid: generate FatTree(k), inject x malfunctions, time a
// detection algorithm and check its plan against the ground truth.
//
// CSV columns: k,algo,x,seed,trial,seconds,steps,outcome,accurate
//   seconds   median wall time of the algorithm over --repeat runs
//   outcome   ok | bound-exceeded
//   accurate  true when the plan repairs the graph into a FatTree in at most
//             x steps; empty when no plan was produced

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "ftfix/algo1.hpp"
#include "ftfix/algo2.hpp"
#include "ftfix/blueprint.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/injector.hpp"
#include "ftfix/verify.hpp"

namespace ftfix {

struct BenchRecord {
  int k = 0;
  int algo = 0;
  std::size_t x = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  double seconds = 0.0;
  std::size_t steps = 0;
  bool bound_exceeded = false;
  std::optional<bool> accurate;

  auto key() const { return std::tie(k, algo, x, trial); }
};

struct BenchConfig {
  std::vector<int> ks;
  std::vector<int> algos{1, 2};
  std::optional<std::vector<std::size_t>> xs;  // default grid per algorithm when unset
  std::size_t trials = 5;
  std::uint64_t seed = 1;
  std::size_t repeat = 1;
  Scope scope = Scope::kSwitchLinksOnly;
  std::size_t threads = 0;  // 0: A3_THREADS or hardware concurrency
};

// {0, k/4-1, k/2-1, k/2} for algo1, {0, k/4-1} for algo2 (deduplicated).
inline std::vector<std::size_t> default_x_grid(int algo, int k) {
  auto at_least_zero = [](int v) { return static_cast<std::size_t>(std::max(v, 0)); };
  std::vector<std::size_t> xs{0, at_least_zero(k / 4 - 1)};
  if (algo == 1) {
    xs.push_back(at_least_zero(k / 2 - 1));
    xs.push_back(static_cast<std::size_t>(k / 2));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline std::size_t worker_count(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("A3_THREADS")) {
      char* end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

inline BenchRecord run_trial(const Blueprint& bp, int algo, std::size_t x, std::size_t trial,
                             const BenchConfig& cfg) {
  const FatTreeParams& p = bp.assignment.params();
  BenchRecord rec;
  rec.k = p.k();
  rec.algo = algo;
  rec.x = x;
  rec.seed = cfg.seed + trial;
  rec.trial = trial;
  const Injection inj = inject(bp.graph, balanced_spec(x, rec.seed, cfg.scope));

  std::optional<FixationPlan> plan;
  std::vector<double> times;
  for (std::size_t r = 0; r < std::max<std::size_t>(cfg.repeat, 1); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    if (algo == 1) {
      plan = algo1::run(inj.graph, p).plan;
    } else {
      auto out = algo2::run(inj.graph, p);
      if (auto* res = std::get_if<algo2::Result>(&out))
        plan = std::move(res->plan);
      else
        plan.reset();
    }
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  rec.seconds = median(std::move(times));
  rec.bound_exceeded = !plan.has_value();
  if (plan) {
    rec.steps = plan->steps();
    rec.accurate = rec.steps <= inj.diff.size() && verify_repaired(apply_fixation(inj.graph, *plan), p);
  }
  return rec;
}

// Rows sorted by (k, algo, x, trial) whatever the completion order.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  for (int a : cfg.algos)
    if (a != 1 && a != 2) throw UsageError("bench: unknown algorithm " + std::to_string(a));
  std::map<int, Blueprint> blueprints;
  struct Task {
    int k, algo;
    std::size_t x, trial;
  };
  std::vector<Task> tasks;
  for (int k : cfg.ks) {
    const FatTreeParams p(k);
    auto& bp = blueprints.try_emplace(k, generate_blueprint(p)).first->second;
    for (int algo : cfg.algos) {
      for (std::size_t x : cfg.xs ? *cfg.xs : default_x_grid(algo, k)) {
        if (x > 0 && x >= bp.graph.edge_count())
          throw ParameterError("bench: x = " + std::to_string(x) + " is infeasible for FatTree(" +
                               std::to_string(k) + ")");
        for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({k, algo, x, t});
      }
    }
  }

  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        const Task& t = tasks[i];
        records[i] = run_trial(blueprints.at(t.k), t.algo, t.x, t.trial, cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = worker_count(cfg.threads, tasks.size());
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::sort(records.begin(), records.end(),
            [](const BenchRecord& a, const BenchRecord& b) { return a.key() < b.key(); });
  return records;
}

inline constexpr const char* kBenchHeader = "k,algo,x,seed,trial,seconds,steps,outcome,accurate";

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << kBenchHeader << '\n';
  char secs[32];
  for (const auto& r : records) {
    std::snprintf(secs, sizeof secs, "%.6f", r.seconds);
    os << r.k << ',' << r.algo << ',' << r.x << ',' << r.seed << ',' << r.trial << ',' << secs << ','
       << r.steps << ',' << (r.bound_exceeded ? "bound-exceeded" : "ok") << ','
       << (r.accurate ? (*r.accurate ? "true" : "false") : "") << '\n';
  }
}

}  // namespace ftfix
