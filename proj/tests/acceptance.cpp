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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Derived quantities are checked against the independent references in
// support.hpp; published figures are hard-coded from the table of scales.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ftfix/ftfix.hpp"
#include "support.hpp"

namespace ftfix {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Seeds are a pure function of the cell so every line is reproducible alone.
std::uint64_t seed_of(int criterion, int k, std::size_t x, int trial) {
  return 1'000'000ULL * criterion + 10'000ULL * k + 100ULL * x + trial;
}

// Applied plan must wire exactly the reference FatTree of the returned roles,
// and the library's own check must agree.
bool repaired(const DeviceGraph& g, const RoleAssignment& a, const FixationPlan& plan) {
  DeviceGraph fixed = apply_fixation(g, plan);
  return testing::link_set(fixed) == testing::layered_reference_links(a.roles(), a.params().k()) &&
         verify_repaired(fixed, a.params());
}

Verdict sizes() {
  struct Row {
    int k;
    std::size_t devices, connections;
  };
  const Row table[] = {{20, 2500, 6000}, {30, 7875, 20250}, {40, 18000, 48000},
                       {50, 34375, 93750}, {60, 58500, 162000}};
  Verdict v;
  std::ostringstream os;
  for (const auto& row : table) {
    auto start = Clock::now();
    auto bp = generate_blueprint(FatTreeParams(row.k));
    const double t = seconds_since(start);
    const bool ok = bp.graph.size() == row.devices && bp.graph.edge_count() == row.connections && t < 5.0;
    v.pass &= ok;
    os << " k=" << row.k << ":" << bp.graph.size() << "/" << bp.graph.edge_count() << "("
       << static_cast<int>(t * 1000) << "ms)";
  }
  v.detail = os.str();
  return v;
}

Verdict in_bound_exactness() {
  Verdict v;
  std::size_t trials = 0, good = 0, compared = 0;
  std::string first_failure;
  auto start = Clock::now();
  for (int k : {8, 12, 20, 40}) {
    const FatTreeParams p(k);
    const DeviceGraph clean = generate_blueprint(p).graph;
    std::vector<std::size_t> xs{0, static_cast<std::size_t>(k / 4 - 1), static_cast<std::size_t>(k / 2 - 1)};
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t x : xs) {
      for (int s = 0; s < 5; ++s) {
        ++trials;
        auto inj = inject(clean, balanced_spec(x, seed_of(2, k, x, s)));
        auto r1 = algo1::run(inj.graph, p);
        bool ok = r1.plan.steps() <= x && repaired(inj.graph, r1.assignment, r1.plan);
        if (4 * x < static_cast<std::size_t>(k)) {
          ++compared;
          auto r2 = algo2::run(inj.graph, p);
          const auto* res = std::get_if<algo2::Result>(&r2);
          ok &= res != nullptr && res->plan.steps() == r1.plan.steps();
        }
        good += ok;
        if (!ok && first_failure.empty())
          first_failure = " first failure k=" + std::to_string(k) + " x=" + std::to_string(x) +
                          " trial=" + std::to_string(s);
      }
    }
  }
  const double t = seconds_since(start);
  v.pass = good == trials && t < 600.0;
  v.detail = " " + std::to_string(good) + "/" + std::to_string(trials) + " exact (" +
             std::to_string(compared) + " cross-checked with algo2), " + std::to_string(static_cast<int>(t)) +
             "s" + first_failure;
  return v;
}

Verdict oracle_minimality() {
  const FatTreeParams p(4);
  const DeviceGraph clean = generate_blueprint(p).graph;
  Verdict v;
  std::size_t trials = 0, equal = 0;
  std::ostringstream os;
  for (std::size_t x : {0, 1}) {
    for (int s = 0; s < 20; ++s) {
      ++trials;
      auto inj = inject(clean, balanced_spec(x, seed_of(3, 4, x, s)));
      auto r1 = algo1::run(inj.graph, p);
      auto best = oracle::fattree_minfix_search(inj.graph);
      if (r1.plan.steps() == best.steps) {
        ++equal;
      } else {
        os << " mismatch x=" << x << " trial=" << s << " algo1=" << r1.plan.steps() << " oracle=" << best.steps;
      }
    }
  }
  v.pass = equal == trials;
  v.detail = " " + std::to_string(equal) + "/" + std::to_string(trials) + " equal to exhaustive minimum" + os.str();
  return v;
}

Verdict mgdp_identity() {
  std::mt19937_64 rng(seed_of(4, 0, 0, 0));
  Verdict v;
  std::size_t holds = 0;
  const std::size_t pairs = 200;
  auto random_graph = [&rng](std::size_t n) {
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.1, 0.9)(rng));
    std::vector<Link> links;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = u + 1; w < n; ++w)
        if (coin(rng)) links.push_back({u, w});
    return DeviceGraph(n, links);
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    DeviceGraph a = random_graph(n), b = random_graph(n);
    std::vector<NodeId> pi(n);
    std::iota(pi.begin(), pi.end(), NodeId{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    // Ordered-pair counts straight from the definitions.
    std::size_t d = 0, c = 0;
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = 0; y < n; ++y) {
        if (x == y) continue;
        const bool in_a = a.has_edge(x, y), in_b = b.has_edge(pi[x], pi[y]);
        d += in_a != in_b;
        c += in_a && in_b;
      }
    const std::size_t arcs = 2 * (a.edge_count() + b.edge_count());
    auto lib = oracle::mgdp_counts(a, b, pi);
    holds += d + 2 * c == arcs && lib.difference == d && lib.common == c &&
             oracle::mces_identity_check(a, b, pi);
  }
  v.pass = holds == pairs;
  v.detail = " " + std::to_string(holds) + "/" + std::to_string(pairs) + " random pairs";
  return v;
}

// Removes the edge(pod, i) - aggregate(pod, sigma(i)) link for every i, so no
// two edge switches of the pod keep the same row.
Injection collapse_pod(const Blueprint& bp, int pod, std::mt19937_64& rng) {
  const FatTreeParams& p = bp.assignment.params();
  const int h = p.half();
  std::vector<NodeId> edges(h + 1), aggs(h + 1);
  for (NodeId v = 0; v < bp.assignment.size(); ++v) {
    const Role& r = bp.assignment[v];
    if (r.group != pod) continue;
    if (r.kind == RoleKind::kEdge) edges[r.index] = v;
    if (r.kind == RoleKind::kAggregate) aggs[r.index] = v;
  }
  std::vector<int> sigma(h);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  GroundTruthDiff diff;
  for (int i = 1; i <= h; ++i) diff.removed.push_back(make_link(edges[i], aggs[sigma[i - 1]]));
  std::sort(diff.removed.begin(), diff.removed.end());
  return {apply_diff(bp.graph, diff), diff};
}

Verdict bound_soundness() {
  Verdict v;
  std::size_t in_bound = 0, in_bound_ok = 0, beyond = 0, beyond_ok = 0, escaped = 0, collapses = 0;
  for (int k : {12, 16}) {
    const FatTreeParams p(k);
    const Blueprint bp = generate_blueprint(p);
    for (int s = 0; s < 50; ++s) {
      const auto x = static_cast<std::size_t>(s % (k / 4));
      ++in_bound;
      auto inj = inject(bp.graph, balanced_spec(x, seed_of(5, k, x, s)));
      in_bound_ok += std::holds_alternative<algo2::Result>(algo2::run(inj.graph, p));
    }
    std::mt19937_64 rng(seed_of(5, k, 0, 99));
    for (int s = 0; s < 50 + 10; ++s) {
      const auto x = static_cast<std::size_t>(k / 2);
      Injection inj = s < 50 ? inject(bp.graph, balanced_spec(x, seed_of(5, k, x, s)))
                             : collapse_pod(bp, 1 + (s - 50) % k, rng);
      collapses += s >= 50;
      ++beyond;
      auto out = algo2::run(inj.graph, p);
      if (const auto* r = std::get_if<algo2::Result>(&out)) {
        beyond_ok += repaired(inj.graph, r->assignment, r->plan);
      } else {
        ++beyond_ok;
        ++escaped;
      }
    }
  }
  v.pass = in_bound_ok == in_bound && beyond_ok == beyond;
  v.detail = " x<k/4: " + std::to_string(in_bound_ok) + "/" + std::to_string(in_bound) +
             " in bound; x=k/2: " + std::to_string(beyond_ok) + "/" + std::to_string(beyond) + " sound (" +
             std::to_string(escaped) + " bound-exceeded, " + std::to_string(collapses) + " collapse cases)";
  return v;
}

// Per-call times: each round runs every function in a batch of at least
// 20 ms; rounds interleave the functions so machine drift hits all of them,
// and the minimum over rounds is kept.
std::vector<double> per_call_seconds(const std::vector<std::function<void()>>& fns) {
  std::vector<double> best(fns.size(), 1e300);
  for (int round = 0; round < 15; ++round) {
    for (std::size_t i = 0; i < fns.size(); ++i) {
      std::size_t calls = 0;
      auto start = Clock::now();
      double t = 0;
      do {
        fns[i]();
        ++calls;
        t = seconds_since(start);
      } while (t < 0.02);
      best[i] = std::min(best[i], t / static_cast<double>(calls));
    }
  }
  return best;
}

double loglog_slope(const std::vector<double>& ks, const std::vector<double>& ts) {
  const std::size_t n = ks.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(ks[i]) / n;
    my += std::log(ts[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(ks[i]) - mx) * (std::log(ts[i]) - my);
    sxx += (std::log(ks[i]) - mx) * (std::log(ks[i]) - mx);
  }
  return sxy / sxx;
}

Verdict complexity_trend() {
  std::vector<double> ks, t1, t2;
  double worst_variation = 0;
  int worst_k = 0;
  for (int k : {12, 16, 20, 24, 28}) {
    const FatTreeParams p(k);
    const DeviceGraph clean = generate_blueprint(p).graph;
    ks.push_back(k);
    const auto x = static_cast<std::size_t>(k / 4 - 1);
    const DeviceGraph damaged = inject(clean, balanced_spec(x, seed_of(6, k, x, 0))).graph;
    auto t = per_call_seconds({[&] { algo1::run(clean, p); }, [&] { algo2::run(clean, p); },
                               [&] { algo2::run(damaged, p); }});
    t1.push_back(t[0]);
    t2.push_back(t[1]);
    const double t2_clean = t[1], t2_damaged = t[2];
    const double variation = std::abs(t2_damaged - t2_clean) / std::min(t2_clean, t2_damaged);
    if (variation > worst_variation) {
      worst_variation = variation;
      worst_k = k;
    }
  }
  const double s1 = loglog_slope(ks, t1), s2 = loglog_slope(ks, t2);
  Verdict v;
  v.pass = s2 <= 3.8 && s1 >= s2 + 1.5 && worst_variation < 0.25;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                " algo1 slope %.2f, algo2 slope %.2f, algo2 x-variation max %.0f%% (k=%d); algo1 %.2fms..%.2fms, "
                "algo2 %.2fms..%.2fms",
                s1, s2, 100 * worst_variation, worst_k, 1e3 * t1.front(), 1e3 * t1.back(), 1e3 * t2.front(),
                1e3 * t2.back());
  v.detail = buf;
  return v;
}

Verdict beyond_bound_feasibility() {
  std::size_t trials = 0, feasible = 0, near = 0;
  std::ostringstream os;
  for (int k : {12, 20}) {
    const FatTreeParams p(k);
    const DeviceGraph clean = generate_blueprint(p).graph;
    const auto x = static_cast<std::size_t>(k / 2);
    for (int s = 0; s < 10; ++s) {
      ++trials;
      auto inj = inject(clean, balanced_spec(x, seed_of(7, k, x, s)));
      auto r1 = algo1::run(inj.graph, p);
      feasible += repaired(inj.graph, r1.assignment, r1.plan);
      near += r1.plan.steps() <= 2 * x;
      os << (s == 0 ? " k=" + std::to_string(k) + " steps:" : ",") << r1.plan.steps();
    }
  }
  Verdict v;
  v.pass = feasible == trials && 10 * near >= 9 * trials;
  v.detail = " feasible " + std::to_string(feasible) + "/" + std::to_string(trials) + ", steps<=2x " +
             std::to_string(near) + "/" + std::to_string(trials) + ";" + os.str();
  return v;
}

}  // namespace
}  // namespace ftfix

int main() {
  using ftfix::Verdict;
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "size reproduction", ftfix::sizes},
      {2, "in-bound exactness", ftfix::in_bound_exactness},
      {3, "oracle minimality", ftfix::oracle_minimality},
      {4, "difference/common-edge identity", ftfix::mgdp_identity},
      {5, "bound-exceeded soundness", ftfix::bound_soundness},
      {6, "complexity trend", ftfix::complexity_trend},
      {7, "beyond-bound feasibility", ftfix::beyond_bound_feasibility},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string(" exception: ") + e.what()};
    }
    all &= v.pass;
    std::printf("%s %d %s:%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("N/A 8 accuracy comparison against a prior detection baseline: baseline not implemented\n");
  return all ? 0 : 1;
}
