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

// Independent reference computations shared by the tests. Nothing here calls
// the library's role rules, so agreement is evidence rather than tautology.

#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "ftfix/blueprint.hpp"
#include "ftfix/graph.hpp"

namespace ftfix::testing {

// Direct transcription of the FatTree connection rules.
inline bool rule_connected(const Role& a, const Role& b, int k) {
  const int h = k / 2;
  auto one_way = [h](const Role& x, const Role& y) {
    if (x.kind == RoleKind::kCore && y.kind == RoleKind::kAggregate) return x.group == y.index;
    if (x.kind == RoleKind::kAggregate && y.kind == RoleKind::kEdge) return x.group == y.group;
    if (x.kind == RoleKind::kEdge && y.kind == RoleKind::kServer)
      return y.group == (x.group - 1) * h + x.index;
    return false;
  };
  return one_way(a, b) || one_way(b, a);
}

inline std::set<std::pair<NodeId, NodeId>> reference_links(const std::vector<Role>& roles, int k) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (NodeId u = 0; u < roles.size(); ++u)
    for (NodeId v = u + 1; v < roles.size(); ++v)
      if (rule_connected(roles[u], roles[v], k)) out.emplace(u, v);
  return out;
}

// Same set as reference_links, but only pairs from adjacent layers are tested
// and servers are looked up by group, so large k stays cheap.
inline std::set<std::pair<NodeId, NodeId>> layered_reference_links(const std::vector<Role>& roles,
                                                                   int k) {
  std::vector<NodeId> cores, aggs, edges;
  std::vector<std::vector<NodeId>> servers_of_group(static_cast<std::size_t>(k) * k / 2 + 1);
  for (NodeId v = 0; v < roles.size(); ++v) {
    switch (roles[v].kind) {
      case RoleKind::kCore: cores.push_back(v); break;
      case RoleKind::kAggregate: aggs.push_back(v); break;
      case RoleKind::kEdge: edges.push_back(v); break;
      case RoleKind::kServer: servers_of_group.at(roles[v].group).push_back(v); break;
    }
  }
  std::set<std::pair<NodeId, NodeId>> out;
  auto add = [&out](NodeId u, NodeId v) { out.emplace(std::min(u, v), std::max(u, v)); };
  auto cross = [&](const std::vector<NodeId>& xs, const std::vector<NodeId>& ys) {
    for (NodeId x : xs)
      for (NodeId y : ys)
        if (rule_connected(roles[x], roles[y], k)) add(x, y);
  };
  cross(cores, aggs);
  cross(aggs, edges);
  for (NodeId e : edges)
    for (NodeId s : servers_of_group.at(static_cast<std::size_t>((roles[e].group - 1) * (k / 2) + roles[e].index)))
      if (rule_connected(roles[e], roles[s], k)) add(e, s);
  return out;
}

inline std::set<std::pair<NodeId, NodeId>> link_set(const DeviceGraph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& l : g.links()) out.emplace(l.u, l.v);
  return out;
}

// Undirected edits between a graph and the FatTree wired by `roles`.
inline std::size_t reference_steps(const DeviceGraph& g, const std::vector<Role>& roles, int k) {
  auto want = reference_links(roles, k);
  auto have = link_set(g);
  std::size_t diff = 0;
  for (const auto& e : want) diff += !have.count(e);
  for (const auto& e : have) diff += !want.count(e);
  return diff;
}

// Two assignments are equal up to a blueprint automorphism exactly when they
// wire the same labelled graph. expected_adjacency itself is checked against
// reference_links in the blueprint tests; the quadratic reference is too slow
// to use here at k = 60.
inline bool same_up_to_automorphism(const RoleAssignment& a, const RoleAssignment& b) {
  return a.params() == b.params() && expected_adjacency(a) == expected_adjacency(b);
}

// Role vector with `fixed` roles moved onto the given node ids.
inline std::vector<Role> roles_with(const FatTreeParams& p,
                                    const std::vector<std::pair<NodeId, Role>>& fixed) {
  auto roles = canonical_roles(p);
  std::vector<char> pinned(roles.size(), 0);
  for (const auto& [id, role] : fixed) {
    for (std::size_t j = 0; j < roles.size(); ++j)
      if (!pinned[j] && roles[j] == role) {
        std::swap(roles[j], roles[id]);
        break;
      }
    pinned[id] = 1;
  }
  return roles;
}

}  // namespace ftfix::testing
