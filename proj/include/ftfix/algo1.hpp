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

// Degree/similarity role assignment.
//
//   1. the k^3/4 lowest-degree nodes are servers
//   2. in the switch graph, the k^2/2 lowest-degree nodes are edge switches
//   3. the k^2/2 nodes with most edge-switch neighbors are aggregates, the
//      rest are cores
//   4. edge and core switches are grouped by neighbor similarity
//   5. aggregate roles are filled greedily by overlap with the expected
//      neighbor set of each role
//
// Exact (minimum fixation) for fewer than k/2 undirected link malfunctions;
// beyond that the assignment is still a valid FatTree labelling, so the
// resulting plan is feasible. Every tie breaks toward the smaller node id.

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "ftfix/blueprint.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/graph.hpp"
#include "ftfix/switch_graph.hpp"

namespace ftfix::algo1 {

inline std::vector<NodeId> by_degree(const DeviceGraph& g) {
  std::vector<NodeId> order(g.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&g](NodeId a, NodeId b) { return degree(g, a) < degree(g, b); });
  return order;
}

inline SwitchSplit strip_servers(const DeviceGraph& g, const FatTreeParams& p) {
  if (g.size() != p.node_count())
    throw InputError("graph has " + std::to_string(g.size()) + " nodes, FatTree(" +
                     std::to_string(p.k()) + ") needs " + std::to_string(p.node_count()));
  auto order = by_degree(g);
  order.resize(p.server_count());
  return split_off_servers(g, std::move(order));
}

// Switch-graph ids, each list ascending.
struct LevelPartition {
  std::vector<NodeId> edges;
  std::vector<NodeId> aggregates;
  std::vector<NodeId> cores;
};

inline LevelPartition classify_levels(const DeviceGraph& sw, const FatTreeParams& p) {
  if (sw.size() != p.switch_count())
    throw InputError("switch graph has " + std::to_string(sw.size()) + " nodes, expected " +
                     std::to_string(p.switch_count()));
  auto order = by_degree(sw);
  LevelPartition out;
  out.edges.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p.edge_count()));
  std::vector<char> is_edge(sw.size(), 0);
  for (NodeId e : out.edges) is_edge[e] = 1;

  std::vector<std::size_t> edge_links(sw.size(), 0);
  std::vector<NodeId> rest;
  for (NodeId v = 0; v < sw.size(); ++v) {
    if (is_edge[v]) continue;
    for (NodeId w : sw.neighbors(v)) edge_links[v] += is_edge[w];
    rest.push_back(v);
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [&](NodeId a, NodeId b) { return edge_links[a] > edge_links[b]; });
  auto split = rest.begin() + static_cast<std::ptrdiff_t>(p.aggregate_count());
  out.aggregates.assign(rest.begin(), split);
  out.cores.assign(split, rest.end());
  std::sort(out.edges.begin(), out.edges.end());
  std::sort(out.aggregates.begin(), out.aggregates.end());
  std::sort(out.cores.begin(), out.cores.end());
  return out;
}

// groups[i] holds group id i + 1; members ascending.
struct SimilarityGroups {
  std::vector<std::vector<NodeId>> groups;
};

// Repeatedly anchors on the lowest ungrouped id and attaches its k/2 - 1 most
// similar ungrouped peers.
inline SimilarityGroups group_by_similarity(const BitRows& rows, std::vector<NodeId> nodes,
                                            const FatTreeParams& p) {
  const auto h = static_cast<std::size_t>(p.half());
  if (nodes.size() % h != 0)
    throw UsageError("group_by_similarity: " + std::to_string(nodes.size()) +
                     " nodes do not split into groups of " + std::to_string(h));
  std::sort(nodes.begin(), nodes.end());
  SimilarityGroups out;
  std::vector<std::pair<std::size_t, NodeId>> scored;
  while (!nodes.empty()) {
    NodeId anchor = nodes.front();
    scored.clear();
    for (auto it = nodes.begin() + 1; it != nodes.end(); ++it)
      scored.emplace_back(rows.similarity(anchor, *it), *it);
    auto take = scored.begin() + static_cast<std::ptrdiff_t>(h - 1);
    std::partial_sort(scored.begin(), take, scored.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<NodeId> group{anchor};
    for (auto it = scored.begin(); it != take; ++it) group.push_back(it->second);
    std::sort(group.begin(), group.end());
    std::vector<NodeId> remaining;
    remaining.reserve(nodes.size() - h);
    std::set_difference(nodes.begin(), nodes.end(), group.begin(), group.end(),
                        std::back_inserter(remaining));
    nodes = std::move(remaining);
    out.groups.push_back(std::move(group));
  }
  return out;
}

// Roles for every switch-graph node. Edge group p becomes pod p with edge
// indices following member order; core group i becomes CoreNode(i); each
// aggregate role (p, i), taken in lexical order, goes to the unassigned
// aggregate with the largest overlap with edge group p plus core group i.
inline std::vector<Role> assign_aggregates(const BitRows& rows, const SimilarityGroups& edge_groups,
                                           const SimilarityGroups& core_groups,
                                           const std::vector<NodeId>& aggregates,
                                           const FatTreeParams& p) {
  const int h = p.half();
  if (edge_groups.groups.size() != static_cast<std::size_t>(p.k()) ||
      core_groups.groups.size() != static_cast<std::size_t>(h) ||
      aggregates.size() != p.aggregate_count())
    throw UsageError("assign_aggregates: level sizes do not match FatTree(" +
                     std::to_string(p.k()) + ")");
  std::vector<Role> roles(rows.size());
  for (int pod = 1; pod <= p.k(); ++pod) {
    const auto& members = edge_groups.groups[pod - 1];
    for (int i = 0; i < h; ++i) roles[members[i]] = Role::edge(pod, i + 1);
  }
  for (int g = 1; g <= h; ++g)
    for (NodeId c : core_groups.groups[g - 1]) roles[c] = Role::core(g);

  std::vector<std::vector<std::uint64_t>> edge_masks;
  std::vector<std::vector<std::uint64_t>> core_masks;
  for (const auto& grp : edge_groups.groups) edge_masks.push_back(rows.mask(grp));
  for (const auto& grp : core_groups.groups) core_masks.push_back(rows.mask(grp));

  std::vector<NodeId> free(aggregates.begin(), aggregates.end());
  std::sort(free.begin(), free.end());
  std::vector<std::uint64_t> expected(rows.words());
  for (int pod = 1; pod <= p.k(); ++pod) {
    for (int i = 1; i <= h; ++i) {
      for (std::size_t w = 0; w < expected.size(); ++w)
        expected[w] = edge_masks[pod - 1][w] | core_masks[i - 1][w];
      auto best = free.begin();
      std::size_t best_overlap = rows.overlap(*best, expected);
      for (auto it = free.begin() + 1; it != free.end(); ++it) {
        std::size_t o = rows.overlap(*it, expected);
        if (o > best_overlap) {
          best_overlap = o;
          best = it;
        }
      }
      roles[*best] = Role::aggregate(pod, i);
      free.erase(best);
    }
  }
  return roles;
}

struct Result {
  RoleAssignment assignment;
  FixationPlan plan;
  // Plan has k/2 or more steps: feasible, minimality not guaranteed.
  bool beyond_bound = false;
};

inline RoleAssignment assign_roles(const DeviceGraph& g, const FatTreeParams& p) {
  SwitchSplit split = strip_servers(g, p);
  LevelPartition levels = classify_levels(split.switches, p);
  BitRows rows(split.switches);
  auto edge_groups = group_by_similarity(rows, levels.edges, p);
  auto core_groups = group_by_similarity(rows, levels.cores, p);
  auto switch_roles = assign_aggregates(rows, edge_groups, core_groups, levels.aggregates, p);
  return complete_assignment(g, split, switch_roles, p);
}

inline Result run(const DeviceGraph& g, const FatTreeParams& p) {
  RoleAssignment assignment = assign_roles(g, p);
  FixationPlan plan = compute_fixation(g, assignment);
  bool beyond = plan.steps() >= static_cast<std::size_t>(p.half());
  return {std::move(assignment), std::move(plan), beyond};
}

}  // namespace ftfix::algo1
