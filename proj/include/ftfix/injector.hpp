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

// Seeded link-malfunction injection with a ground-truth diff.
//
// x undirected link malfunctions = links removed + links added. A swap
// replaces (a,b),(c,d) by (a,d),(c,b): two removals and two additions that
// leave every degree unchanged, so it counts 4 towards x.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "json.hpp"

#include "ftfix/graph.hpp"

namespace ftfix {

enum class Scope : std::uint8_t {
  kSwitchLinksOnly,     // servers (degree <= 1 nodes) are never touched
  kIncludeServerLinks,  // any link or node pair is eligible
};

struct MalfunctionSpec {
  std::uint64_t seed = 0;
  std::size_t removals = 0;
  std::size_t additions = 0;
  std::size_t swaps = 0;
  Scope scope = Scope::kSwitchLinksOnly;

  std::size_t total() const { return removals + additions + 4 * swaps; }
};

// Both lists sorted, links normalized u < v.
struct GroundTruthDiff {
  std::vector<Link> removed;
  std::vector<Link> added;

  std::size_t size() const { return removed.size() + added.size(); }
  friend bool operator==(const GroundTruthDiff&, const GroundTruthDiff&) = default;
};

struct Injection {
  DeviceGraph graph;
  GroundTruthDiff diff;
};

inline DeviceGraph apply_diff(const DeviceGraph& g, const GroundTruthDiff& diff) {
  return with_edits(g, diff.removed, diff.added);
}

inline GroundTruthDiff inverse(const GroundTruthDiff& diff) {
  return {diff.added, diff.removed};
}

inline nlohmann::json to_json(const GroundTruthDiff& diff) {
  auto pairs = [](const std::vector<Link>& links) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : links) arr.push_back({l.u, l.v});
    return arr;
  };
  return {{"removed", pairs(diff.removed)}, {"added", pairs(diff.added)}};
}

inline GroundTruthDiff diff_from_json(const nlohmann::json& j) {
  auto pairs = [](const nlohmann::json& arr) {
    std::vector<Link> out;
    for (const auto& e : arr) out.push_back(make_link(e.at(0).get<NodeId>(), e.at(1).get<NodeId>()));
    std::sort(out.begin(), out.end());
    return out;
  };
  try {
    return {pairs(j.at("removed")), pairs(j.at("added"))};
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("diff json: ") + ex.what());
  }
}

namespace detail {

class Injector {
 public:
  Injector(const DeviceGraph& g, std::uint64_t seed, Scope scope) : g_(g), rng_(seed) {
    eligible_.assign(g.size(), 0);
    for (NodeId v = 0; v < g.size(); ++v) {
      eligible_[v] = scope == Scope::kIncludeServerLinks || degree(g, v) > 1;
      if (eligible_[v]) nodes_.push_back(v);
    }
    for (const auto& l : g.links())
      if (eligible_[l.u] && eligible_[l.v]) links_.push_back(l);
  }

  void swap_once() {
    if (links_.size() >= 2) {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        Link e1 = links_[pick(links_.size())];
        Link e2 = links_[pick(links_.size())];
        bool flip1 = pick(2) == 1;
        bool flip2 = pick(2) == 1;
        NodeId a = flip1 ? e1.v : e1.u, b = flip1 ? e1.u : e1.v;
        NodeId c = flip2 ? e2.v : e2.u, d = flip2 ? e2.u : e2.v;
        if (try_swap(a, b, c, d)) return;
      }
      // Dense or tiny graphs: scan every ordered pair before giving up.
      for (std::size_t i = 0; i < links_.size(); ++i)
        for (std::size_t j = i + 1; j < links_.size(); ++j)
          for (int o = 0; o < 2; ++o) {
            Link e1 = links_[i];
            Link e2 = links_[j];
            if (o == 1 ? try_swap(e1.u, e1.v, e2.v, e2.u) : try_swap(e1.u, e1.v, e2.u, e2.v)) return;
          }
    }
    throw InjectionError("no two links can be swapped without creating an existing link");
  }

  // Replaces (a,b),(c,d) by (a,d),(c,b) when both new pairs are free.
  bool try_swap(NodeId a, NodeId b, NodeId c, NodeId d) {
    if (a == c || a == d || b == c || b == d) return false;
    Link ab = make_link(a, b), cd = make_link(c, d);
    Link ad = make_link(a, d), cb = make_link(c, b);
    if (removed_.count(ab) || removed_.count(cd)) return false;
    if (!g_.has_edge(a, b) || !g_.has_edge(c, d)) return false;
    if (g_.has_edge(a, d) || g_.has_edge(c, b) || added_.count(ad) || added_.count(cb)) return false;
    removed_.insert(ab);
    removed_.insert(cd);
    added_.insert(ad);
    added_.insert(cb);
    return true;
  }

  void remove(std::size_t count) {
    std::vector<Link> pool;
    for (const auto& l : links_)
      if (!removed_.count(l)) pool.push_back(l);
    if (count > pool.size())
      throw InjectionError("cannot remove " + std::to_string(count) + " links: only " +
                           std::to_string(pool.size()) + " eligible");
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(pool[i], pool[i + pick(pool.size() - i)]);
      removed_.insert(pool[i]);
    }
  }

  void add(std::size_t count) {
    const std::size_t m = nodes_.size();
    const std::size_t pairs = m * (m - (m > 0 ? 1 : 0)) / 2;
    const std::size_t free = pairs - links_.size() - added_.size();
    if (count > free)
      throw InjectionError("cannot add " + std::to_string(count) + " links: only " +
                           std::to_string(free) + " free node pairs");
    if (count == 0) return;
    if (free * 4 >= pairs) {
      // Rejection sampling is uniform over the free pairs.
      while (count > 0) {
        NodeId u = nodes_[pick(m)];
        NodeId v = nodes_[pick(m)];
        if (u == v || g_.has_edge(u, v) || !added_.insert(make_link(u, v)).second) continue;
        --count;
      }
      return;
    }
    std::vector<Link> pool;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Link l = make_link(nodes_[i], nodes_[j]);
        if (!g_.has_edge(l.u, l.v) && !added_.count(l)) pool.push_back(l);
      }
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(pool[i], pool[i + pick(pool.size() - i)]);
      added_.insert(pool[i]);
    }
  }

  Injection finish() const {
    GroundTruthDiff diff{{removed_.begin(), removed_.end()}, {added_.begin(), added_.end()}};
    return {apply_diff(g_, diff), std::move(diff)};
  }

 private:
  std::size_t pick(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  const DeviceGraph& g_;
  std::mt19937_64 rng_;
  std::vector<char> eligible_;
  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  std::set<Link> removed_;
  std::set<Link> added_;
};

}  // namespace detail

// Deterministic for equal (g, spec). Swaps are placed first, then removals,
// then additions; no pair is touched twice.
inline Injection inject(const DeviceGraph& g, const MalfunctionSpec& spec) {
  if (spec.total() > 0 && spec.total() >= g.edge_count())
    throw InjectionError("requested " + std::to_string(spec.total()) + " malfunctions on a graph with " +
                         std::to_string(g.edge_count()) + " links");
  detail::Injector inj(g, spec.seed, spec.scope);
  for (std::size_t i = 0; i < spec.swaps; ++i) inj.swap_once();
  inj.remove(spec.removals);
  inj.add(spec.additions);
  return inj.finish();
}

// One random degree-preserving swap among switch links.
inline Injection degree_preserving_miswire(const DeviceGraph& g, std::uint64_t seed) {
  MalfunctionSpec spec;
  spec.seed = seed;
  spec.swaps = 1;
  return inject(g, spec);
}

// Replaces (a,b),(c,d) by (a,d),(c,b).
inline Injection swap_links(const DeviceGraph& g, NodeId a, NodeId b, NodeId c, NodeId d) {
  detail::Injector inj(g, 0, Scope::kIncludeServerLinks);
  if (!inj.try_swap(a, b, c, d))
    throw InjectionError("links " + std::to_string(a) + "-" + std::to_string(b) + " and " +
                         std::to_string(c) + "-" + std::to_string(d) + " cannot be swapped");
  return inj.finish();
}

// x = removals + additions split evenly, the odd one going to removals.
inline MalfunctionSpec balanced_spec(std::size_t x, std::uint64_t seed,
                                     Scope scope = Scope::kSwitchLinksOnly) {
  MalfunctionSpec spec;
  spec.seed = seed;
  spec.removals = (x + 1) / 2;
  spec.additions = x / 2;
  spec.scope = scope;
  return spec;
}

}  // namespace ftfix
