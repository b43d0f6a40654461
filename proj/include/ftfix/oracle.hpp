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

// Exhaustive solvers used to certify the fast algorithms at small scale.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "ftfix/blueprint.hpp"
#include "ftfix/error.hpp"
#include "ftfix/graph.hpp"

namespace ftfix::oracle {

using Matrix = std::vector<std::vector<std::uint8_t>>;

// Dense adjacency, padded with isolated vertices up to `n`.
inline Matrix dense(const DeviceGraph& g, std::size_t n) {
  Matrix m(n, std::vector<std::uint8_t>(n, 0));
  for (const auto& l : g.links()) m[l.u][l.v] = m[l.v][l.u] = 1;
  return m;
}

// All quantities count ordered pairs: arcs = 2 * undirected links.
struct MgdpCounts {
  std::size_t difference = 0;  // d(pi) over V1 x V1
  std::size_t common = 0;      // c(pi): arcs of G1 mapped onto arcs of G2
  std::size_t arcs1 = 0;
  std::size_t arcs2 = 0;
};

inline MgdpCounts mgdp_counts(const DeviceGraph& g1, const DeviceGraph& g2,
                              const std::vector<NodeId>& pi) {
  const std::size_t n = std::max(g1.size(), g2.size());
  if (pi.size() != n) throw UsageError("bijection size does not match padded graph size");
  std::vector<char> seen(n, 0);
  for (NodeId t : pi) {
    if (t >= n || seen[t]) throw UsageError("mapping is not a bijection");
    seen[t] = 1;
  }
  Matrix a1 = dense(g1, n);
  Matrix a2 = dense(g2, n);
  MgdpCounts c;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const int x = a1[u][v];
      const int y = a2[pi[u]][pi[v]];
      c.difference += static_cast<std::size_t>(x != y);
      c.common += static_cast<std::size_t>(x && y);
      c.arcs1 += static_cast<std::size_t>(x);
      c.arcs2 += a2[u][v];
    }
  }
  return c;
}

// d(pi) + 2 c(pi) == |E1| + |E2|, everything in ordered pairs.
inline bool mces_identity_check(const DeviceGraph& g1, const DeviceGraph& g2,
                                const std::vector<NodeId>& pi) {
  auto c = mgdp_counts(g1, g2, pi);
  return c.difference + 2 * c.common == c.arcs1 + c.arcs2;
}

struct MgdpSolution {
  std::size_t difference = 0;
  std::vector<NodeId> bijection;  // lexicographically first optimum
};

inline constexpr std::size_t kMaxBruteForceNodes = 9;

// Minimum d(pi) over all n! bijections; the smaller graph is padded with
// isolated vertices.
inline MgdpSolution mgdp_bruteforce(const DeviceGraph& g1, const DeviceGraph& g2) {
  const std::size_t n = std::max(g1.size(), g2.size());
  if (n > kMaxBruteForceNodes)
    throw SizeError("mgdp_bruteforce supports at most " + std::to_string(kMaxBruteForceNodes) +
                    " nodes, got " + std::to_string(n));
  Matrix a1 = dense(g1, n);
  Matrix a2 = dense(g2, n);
  std::vector<NodeId> pi(n);
  std::iota(pi.begin(), pi.end(), NodeId{0});
  MgdpSolution best{std::numeric_limits<std::size_t>::max(), pi};
  do {
    std::size_t d = 0;
    for (std::size_t u = 0; u < n && d < best.difference; ++u)
      for (std::size_t v = 0; v < n; ++v) d += a1[u][v] != a2[pi[u]][pi[v]];
    if (d < best.difference) best = {d, pi};
  } while (best.difference > 0 && std::next_permutation(pi.begin(), pi.end()));
  return best;
}

struct MinFixOptions {
  std::size_t node_budget = 50'000'000;
  // When false, branches are cut only by the pass cap, never by a better
  // incumbent found during the pass.
  bool incumbent_pruning = true;
  std::size_t max_steps = 64;
};

struct MinFixResult {
  std::size_t steps = 0;
  std::vector<Role> roles;  // an optimal assignment
  std::size_t nodes_explored = 0;
};

namespace detail {

// Branch and bound over FatTree(4) role assignments. Nodes are labelled one
// at a time in BFS order of the physical graph, so each choice is charged
// against its already-labelled neighbors immediately. Blueprint automorphisms
// (permuting pods, core groups together with aggregate indices, and edge
// indices within a pod) are removed by only ever opening the lowest unused
// pod, core group or in-pod index.
class MinFixSearch {
 public:
  MinFixSearch(const DeviceGraph& g, const FatTreeParams& p, const MinFixOptions& opt)
      : p_(p), opt_(opt), n_(g.size()), adj_(dense(g, g.size())), role_(n_) {
    const auto k = static_cast<std::size_t>(p.k());
    const auto h = static_cast<std::size_t>(p.half());
    pod_refs_.assign(k + 1, 0);
    group_refs_.assign(h + 1, 0);
    index_refs_.assign(k + 1, std::vector<int>(h + 1, 0));
    core_fill_.assign(h + 1, 0);
    edge_taken_.assign(k + 1, std::vector<int>(h + 1, 0));
    agg_taken_.assign(k + 1, std::vector<int>(h + 1, 0));
    server_fill_.assign(k + 1, std::vector<int>(h + 1, 0));
    index_open_.assign(k + 1, 0);
    order_ = bfs_order(g);
  }

  MinFixResult solve() {
    for (std::size_t cap = 1;; cap = std::min(2 * cap, opt_.max_steps + 1)) {
      best_ = cap;  // accept only solutions strictly below the cap
      found_ = false;
      descend(0, 0);
      if (found_) return {best_found_, best_roles_, explored_};
      if (cap > opt_.max_steps)
        throw BudgetError("no FatTree labelling within " + std::to_string(opt_.max_steps) +
                          " fix steps");
    }
  }

  // Lower bound used for pruning: mismatches among labelled nodes plus, per
  // labelled node, the gap between the links it still expects and the links
  // it has towards unlabelled nodes.
  static std::size_t lower_bound(const Matrix& adj, const std::vector<std::optional<Role>>& roles,
                                 const FatTreeParams& p) {
    const std::size_t n = adj.size();
    std::size_t cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!roles[v]) continue;
      long expected = expected_degree(*roles[v], p);
      long actual = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v) continue;
        if (roles[u]) {
          const bool want = connected(*roles[v], *roles[u], p);
          expected -= want;
          if (u > v) cost += static_cast<std::size_t>(adj[v][u] != want);
        } else {
          actual += adj[v][u];
        }
      }
      cost += static_cast<std::size_t>(std::abs(expected - actual));
    }
    return cost;
  }

 private:
  static std::vector<NodeId> bfs_order(const DeviceGraph& g) {
    std::vector<NodeId> order;
    std::vector<char> seen(g.size(), 0);
    std::vector<NodeId> roots(g.size());
    std::iota(roots.begin(), roots.end(), NodeId{0});
    std::stable_sort(roots.begin(), roots.end(),
                     [&g](NodeId a, NodeId b) { return degree(g, a) > degree(g, b); });
    for (NodeId r : roots) {
      if (seen[r]) continue;
      seen[r] = 1;
      std::size_t head = order.size();
      order.push_back(r);
      while (head < order.size()) {
        for (NodeId w : g.neighbors(order[head++]))
          if (!seen[w]) {
            seen[w] = 1;
            order.push_back(w);
          }
      }
    }
    return order;
  }

  std::vector<Role> candidates() const {
    const int k = p_.k(), h = p_.half();
    const int pods = std::min(pods_open_ + 1, k);
    const int groups = std::min(groups_open_ + 1, h);
    std::vector<Role> out;
    for (int g = 1; g <= groups; ++g)
      if (core_fill_[g] < h) out.push_back(Role::core(g));
    for (int pod = 1; pod <= pods; ++pod) {
      for (int i = 1; i <= groups; ++i)
        if (!agg_taken_[pod][i]) out.push_back(Role::aggregate(pod, i));
      const int idx = std::min(index_open_[pod] + 1, h);
      for (int j = 1; j <= idx; ++j) {
        if (!edge_taken_[pod][j]) out.push_back(Role::edge(pod, j));
        if (server_fill_[pod][j] < h)
          out.push_back(Role::server(server_group_of_edge(pod, j, p_)));
      }
    }
    return out;
  }

  // Pod, core group and in-pod edge index a role refers to (0 when none).
  struct Labels {
    int pod = 0, group = 0, index = 0;
  };
  Labels labels(const Role& r) const {
    const int h = p_.half();
    switch (r.kind) {
      case RoleKind::kCore: return {0, r.group, 0};
      case RoleKind::kAggregate: return {r.group, r.index, 0};
      case RoleKind::kEdge: return {r.group, 0, r.index};
      case RoleKind::kServer: return {(r.group - 1) / h + 1, 0, (r.group - 1) % h + 1};
    }
    return {};
  }

  void place(const Role& r, int delta) {
    const Labels l = labels(r);
    auto bump = [delta](int& refs, int& open) {
      if (delta > 0 && refs++ == 0) ++open;
      if (delta < 0 && --refs == 0) --open;
    };
    if (l.pod) bump(pod_refs_[l.pod], pods_open_);
    if (l.group) bump(group_refs_[l.group], groups_open_);
    if (l.index) bump(index_refs_[l.pod][l.index], index_open_[l.pod]);
    switch (r.kind) {
      case RoleKind::kCore: core_fill_[r.group] += delta; break;
      case RoleKind::kAggregate: agg_taken_[r.group][r.index] += delta; break;
      case RoleKind::kEdge: edge_taken_[r.group][r.index] += delta; break;
      case RoleKind::kServer: server_fill_[l.pod][l.index] += delta; break;
    }
  }

  std::size_t bound(std::size_t partial) const {
    std::size_t extra = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (!role_[v]) continue;
      long expected = expected_degree(*role_[v], p_);
      long actual = 0;
      for (std::size_t u = 0; u < n_; ++u) {
        if (u == v) continue;
        if (role_[u])
          expected -= connected(*role_[v], *role_[u], p_);
        else
          actual += adj_[v][u];
      }
      extra += static_cast<std::size_t>(std::abs(expected - actual));
    }
    return partial + extra;
  }

  void descend(std::size_t depth, std::size_t partial) {
    if (++explored_ > opt_.node_budget)
      throw BudgetError("minfix search exceeded node budget of " + std::to_string(opt_.node_budget));
    if (depth == n_) {
      record(partial);
      return;
    }
    const NodeId v = order_[depth];
    for (const Role& r : candidates()) {
      std::size_t inc = 0;
      for (NodeId u = 0; u < n_; ++u)
        if (role_[u]) inc += adj_[v][u] != connected(r, *role_[u], p_);
      if (partial + inc >= best_) continue;
      role_[v] = r;
      place(r, +1);
      if (bound(partial + inc) < best_) descend(depth + 1, partial + inc);
      place(r, -1);
      role_[v].reset();
    }
  }

  void record(std::size_t cost) {
    if (found_ && cost >= best_found_) return;
    found_ = true;
    best_found_ = cost;
    best_roles_.clear();
    for (const auto& r : role_) best_roles_.push_back(*r);
    if (opt_.incumbent_pruning) best_ = cost;
  }

  FatTreeParams p_;
  MinFixOptions opt_;
  std::size_t n_;
  Matrix adj_;
  std::vector<std::optional<Role>> role_;
  std::vector<NodeId> order_;

  std::vector<int> pod_refs_, group_refs_, core_fill_, index_open_;
  std::vector<std::vector<int>> index_refs_, edge_taken_, agg_taken_, server_fill_;
  int pods_open_ = 0;
  int groups_open_ = 0;

  std::size_t best_ = 0;
  std::size_t best_found_ = 0;
  bool found_ = false;
  std::vector<Role> best_roles_;
  std::size_t explored_ = 0;
};

}  // namespace detail

// Global minimum number of fix steps turning `g` into some FatTree(4).
inline MinFixResult fattree_minfix_search(const DeviceGraph& g, const MinFixOptions& opt = {}) {
  const FatTreeParams p(4);
  if (g.size() != p.node_count())
    throw SizeError("fattree_minfix_search needs a FatTree(4)-sized graph (36 nodes), got " +
                    std::to_string(g.size()));
  return detail::MinFixSearch(g, p, opt).solve();
}

}  // namespace ftfix::oracle
