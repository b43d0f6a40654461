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

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ftfix/blueprint.hpp"
#include "ftfix/graph.hpp"

namespace ftfix {

// A physical graph split into its server set and the induced switch graph.
// Switch ids are dense and increase with the original node id.
struct SwitchSplit {
  DeviceGraph switches;
  std::vector<NodeId> original;  // switch id -> node id in the full graph
  std::vector<NodeId> servers;   // ascending node ids in the full graph
};

inline SwitchSplit split_off_servers(const DeviceGraph& g, std::vector<NodeId> servers) {
  std::sort(servers.begin(), servers.end());
  std::vector<char> is_server(g.size(), 0);
  for (NodeId s : servers) is_server[s] = 1;
  std::vector<NodeId> keep;
  keep.reserve(g.size() - servers.size());
  for (NodeId v = 0; v < g.size(); ++v)
    if (!is_server[v]) keep.push_back(v);
  SwitchSplit split{induced_subgraph(g, keep), keep, std::move(servers)};
  return split;
}

// Lifts switch roles to the full graph and places servers: a server joins the
// group of its unique edge-switch neighbor while that group has room; servers
// with zero or several edge neighbors, or whose group is already full, fill the
// remaining slots in group order, lowest node id first.
inline RoleAssignment complete_assignment(const DeviceGraph& g, const SwitchSplit& split,
                                          const std::vector<Role>& switch_roles,
                                          const FatTreeParams& p) {
  if (split.servers.size() != p.server_count() || switch_roles.size() != split.original.size() ||
      g.size() != p.node_count())
    throw UsageError("complete_assignment: split does not match FatTree(" +
                     std::to_string(p.k()) + ")");
  std::vector<std::optional<Role>> roles(g.size());
  for (NodeId s = 0; s < split.original.size(); ++s) roles[split.original[s]] = switch_roles.at(s);

  const int h = p.half();
  std::vector<int> fill(p.server_group_count() + 1, 0);
  std::vector<NodeId> leftover;
  for (NodeId s : split.servers) {
    std::optional<int> group;
    int edge_neighbors = 0;
    for (NodeId w : g.neighbors(s)) {
      if (roles[w] && roles[w]->kind == RoleKind::kEdge) {
        ++edge_neighbors;
        group = server_group_of_edge(roles[w]->group, roles[w]->index, p);
      }
    }
    if (edge_neighbors == 1 && fill[*group] < h) {
      ++fill[*group];
      roles[s] = Role::server(*group);
    } else {
      leftover.push_back(s);
    }
  }
  int next = 1;
  for (NodeId s : leftover) {
    while (fill[next] == h) ++next;
    ++fill[next];
    roles[s] = Role::server(next);
  }

  std::vector<Role> out;
  out.reserve(g.size());
  for (auto& r : roles) out.push_back(*r);
  return RoleAssignment(p, std::move(out));
}

}  // namespace ftfix
