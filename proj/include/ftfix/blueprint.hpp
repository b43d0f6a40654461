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

// FatTree blueprint expressed as roles and connection rules.
//
// Roles (all ids 1-based, h = k/2):
//   CoreNode(group)              group in 1..h, h switches per group
//   AggregateNode(pod, index)    pod in 1..k, index in 1..h, unique
//   EdgeNode(pod, index)         pod in 1..k, index in 1..h, unique
//   ServerNode(group)            group in 1..k*h, h servers per group
//
// Rules:
//   core -- aggregate   iff core.group == aggregate.index
//   aggregate -- edge   iff same pod
//   edge -- server      iff server.group == (edge.pod - 1) * h + edge.index
//
// A role assignment therefore determines the whole adjacency matrix.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ftfix/graph.hpp"

namespace ftfix {

class FatTreeParams {
 public:
  explicit FatTreeParams(int k) : k_(k) {
    if (k < 4 || k % 2 != 0)
      throw ParameterError("FatTree k must be even and >= 4 (got " +
                           std::to_string(k) + ")");
  }

  int k() const { return k_; }
  int half() const { return k_ / 2; }

  std::size_t core_count() const { return sz(k_) * sz(k_) / 4; }
  std::size_t aggregate_count() const { return sz(k_) * sz(k_) / 2; }
  std::size_t edge_count() const { return sz(k_) * sz(k_) / 2; }
  std::size_t server_count() const { return sz(k_) * sz(k_) * sz(k_) / 4; }
  std::size_t server_group_count() const { return sz(k_) * sz(k_) / 2; }
  std::size_t switch_count() const { return 5 * sz(k_) * sz(k_) / 4; }
  std::size_t node_count() const { return server_count() + switch_count(); }
  std::size_t link_count() const { return 3 * sz(k_) * sz(k_) * sz(k_) / 4; }

  friend bool operator==(const FatTreeParams&, const FatTreeParams&) = default;

 private:
  static std::size_t sz(int v) { return static_cast<std::size_t>(v); }
  int k_;
};

// Inverts node_count() = k^3/4 + 5k^2/4 over even k >= 4.
inline std::optional<FatTreeParams> infer_params(std::size_t nodes) {
  for (int k = 4;; k += 2) {
    FatTreeParams p(k);
    if (p.node_count() == nodes) return p;
    if (p.node_count() > nodes) return std::nullopt;
  }
}

enum class RoleKind : std::uint8_t { kCore, kAggregate, kEdge, kServer };

inline const char* role_kind_name(RoleKind kind) {
  switch (kind) {
    case RoleKind::kCore: return "core";
    case RoleKind::kAggregate: return "aggregate";
    case RoleKind::kEdge: return "edge";
    case RoleKind::kServer: return "server";
  }
  return "?";
}

struct Role {
  RoleKind kind = RoleKind::kServer;
  int group = 0;
  int index = 0;  // 0 for core and server roles

  static Role core(int group) { return {RoleKind::kCore, group, 0}; }
  static Role aggregate(int pod, int index) { return {RoleKind::kAggregate, pod, index}; }
  static Role edge(int pod, int index) { return {RoleKind::kEdge, pod, index}; }
  static Role server(int group) { return {RoleKind::kServer, group, 0}; }

  friend auto operator<=>(const Role&, const Role&) = default;
};

inline std::string to_string(const Role& r) {
  switch (r.kind) {
    case RoleKind::kCore: return "CoreNode(" + std::to_string(r.group) + ")";
    case RoleKind::kAggregate:
      return "AggregateNode(" + std::to_string(r.group) + "," + std::to_string(r.index) + ")";
    case RoleKind::kEdge:
      return "EdgeNode(" + std::to_string(r.group) + "," + std::to_string(r.index) + ")";
    case RoleKind::kServer: return "ServerNode(" + std::to_string(r.group) + ")";
  }
  return "?";
}

inline bool valid_role(const Role& r, const FatTreeParams& p) {
  const int h = p.half();
  switch (r.kind) {
    case RoleKind::kCore: return r.group >= 1 && r.group <= h && r.index == 0;
    case RoleKind::kAggregate:
    case RoleKind::kEdge:
      return r.group >= 1 && r.group <= p.k() && r.index >= 1 && r.index <= h;
    case RoleKind::kServer:
      return r.group >= 1 && static_cast<std::size_t>(r.group) <= p.server_group_count() &&
             r.index == 0;
  }
  return false;
}

// Server group served by edge switch (pod, index).
inline int server_group_of_edge(int pod, int index, const FatTreeParams& p) {
  return (pod - 1) * p.half() + index;
}

inline bool connected(const Role& a, const Role& b, const FatTreeParams& p) {
  auto rule = [&p](const Role& lo, const Role& hi) {
    if (lo.kind == RoleKind::kServer && hi.kind == RoleKind::kEdge)
      return lo.group == server_group_of_edge(hi.group, hi.index, p);
    if (lo.kind == RoleKind::kEdge && hi.kind == RoleKind::kAggregate)
      return lo.group == hi.group;
    if (lo.kind == RoleKind::kAggregate && hi.kind == RoleKind::kCore)
      return lo.index == hi.group;
    return false;
  };
  return rule(a, b) || rule(b, a);
}

// Degree every role has in a correct FatTree.
inline int expected_degree(const Role& r, const FatTreeParams& p) {
  return r.kind == RoleKind::kServer ? 1 : p.k();
}

// Canonical node layout: cores, then aggregates, then edges, then servers,
// each numbered from 1 as in the role-to-location lists.
struct CanonicalLayout {
  FatTreeParams params;

  NodeId core(std::size_t j) const { return static_cast<NodeId>(j - 1); }
  NodeId aggregate(std::size_t i) const {
    return static_cast<NodeId>(params.core_count() + i - 1);
  }
  NodeId edge(std::size_t i) const {
    return static_cast<NodeId>(params.core_count() + params.aggregate_count() + i - 1);
  }
  NodeId server(std::size_t i) const {
    return static_cast<NodeId>(params.switch_count() + i - 1);
  }
};

// Roles of the canonical layout, indexed by node id. The aggregate rule
// i % (k/2) is normalized to 1..k/2 so a multiple of k/2 maps to k/2.
inline std::vector<Role> canonical_roles(const FatTreeParams& p) {
  const int h = p.half();
  auto ceil_div = [h](std::size_t i) { return static_cast<int>((i + h - 1) / h); };
  auto pos = [h](std::size_t i) { return static_cast<int>((i - 1) % h) + 1; };
  std::vector<Role> roles;
  roles.reserve(p.node_count());
  for (std::size_t j = 1; j <= p.core_count(); ++j) roles.push_back(Role::core(ceil_div(j)));
  for (std::size_t i = 1; i <= p.aggregate_count(); ++i)
    roles.push_back(Role::aggregate(ceil_div(i), pos(i)));
  for (std::size_t i = 1; i <= p.edge_count(); ++i)
    roles.push_back(Role::edge(ceil_div(i), pos(i)));
  for (std::size_t i = 1; i <= p.server_count(); ++i) roles.push_back(Role::server(ceil_div(i)));
  return roles;
}

// Total mapping node id -> role whose role multiset equals the canonical one.
class RoleAssignment {
 public:
  RoleAssignment(FatTreeParams params, std::vector<Role> roles)
      : params_(params), roles_(std::move(roles)) {
    validate();
  }

  const FatTreeParams& params() const { return params_; }
  std::size_t size() const { return roles_.size(); }
  const Role& operator[](NodeId v) const { return roles_.at(v); }
  const std::vector<Role>& roles() const { return roles_; }

  friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;

 private:
  void validate() const {
    const auto& p = params_;
    if (roles_.size() != p.node_count())
      throw AssignmentError("assignment covers " + std::to_string(roles_.size()) +
                            " nodes, FatTree(" + std::to_string(p.k()) + ") has " +
                            std::to_string(p.node_count()));
    std::map<Role, std::size_t> count;
    for (const auto& r : roles_) {
      if (!valid_role(r, p)) throw AssignmentError("invalid role " + to_string(r));
      ++count[r];
    }
    const auto h = static_cast<std::size_t>(p.half());
    for (const auto& [r, c] : count) {
      std::size_t want = (r.kind == RoleKind::kCore || r.kind == RoleKind::kServer) ? h : 1;
      if (c != want)
        throw AssignmentError(to_string(r) + " assigned " + std::to_string(c) +
                              " times, expected " + std::to_string(want));
    }
  }

  FatTreeParams params_;
  std::vector<Role> roles_;
};

// Adjacency implied by an assignment. Labels default to decimal node ids.
inline DeviceGraph expected_adjacency(const RoleAssignment& a,
                                      std::vector<std::string> labels = {}) {
  const auto& p = a.params();
  const int h = p.half();
  std::vector<std::vector<NodeId>> cores(h + 1);
  std::vector<std::vector<NodeId>> servers(p.server_group_count() + 1);
  std::vector<NodeId> aggs(p.aggregate_count());
  std::vector<NodeId> edges(p.edge_count());
  auto slot = [h](const Role& r) { return static_cast<std::size_t>((r.group - 1) * h + r.index - 1); };
  for (NodeId v = 0; v < a.size(); ++v) {
    const Role& r = a[v];
    switch (r.kind) {
      case RoleKind::kCore: cores[r.group].push_back(v); break;
      case RoleKind::kAggregate: aggs[slot(r)] = v; break;
      case RoleKind::kEdge: edges[slot(r)] = v; break;
      case RoleKind::kServer: servers[r.group].push_back(v); break;
    }
  }
  std::vector<Link> links;
  links.reserve(p.link_count());
  for (int pod = 1; pod <= p.k(); ++pod) {
    for (int i = 1; i <= h; ++i) {
      NodeId agg = aggs[slot(Role::aggregate(pod, i))];
      for (NodeId c : cores[i]) links.push_back(make_link(agg, c));
      for (int j = 1; j <= h; ++j) links.push_back(make_link(agg, edges[slot(Role::edge(pod, j))]));
      NodeId edge = edges[slot(Role::edge(pod, i))];
      for (NodeId s : servers[server_group_of_edge(pod, i, p)]) links.push_back(make_link(edge, s));
    }
  }
  return DeviceGraph(a.size(), links, std::move(labels));
}

struct Blueprint {
  DeviceGraph graph;
  RoleAssignment assignment;
};

inline std::vector<std::string> canonical_labels(const FatTreeParams& p) {
  std::vector<std::string> labels;
  labels.reserve(p.node_count());
  for (std::size_t j = 1; j <= p.core_count(); ++j) labels.push_back("core-" + std::to_string(j));
  for (std::size_t i = 1; i <= p.aggregate_count(); ++i) labels.push_back("agg-" + std::to_string(i));
  for (std::size_t i = 1; i <= p.edge_count(); ++i) labels.push_back("edge-" + std::to_string(i));
  for (std::size_t i = 1; i <= p.server_count(); ++i) labels.push_back("server-" + std::to_string(i));
  return labels;
}

// Applies the structural measure over location indices directly:
//   F(v_i, w_j) = 1  iff  ceil(i/h) == j
//   F(w_i, x_j) = 1  iff  ceil(i/h) == ceil(j/h)
//   F(x_i, y_j) = 1  iff  ((i-1) mod h) + 1 == ceil(j/h)
inline Blueprint generate_blueprint(const FatTreeParams& p) {
  const std::size_t h = static_cast<std::size_t>(p.half());
  const CanonicalLayout at{p};
  auto ceil_div = [h](std::size_t i) { return (i + h - 1) / h; };
  std::vector<Link> links;
  links.reserve(p.link_count());
  for (std::size_t i = 1; i <= p.server_count(); ++i)
    links.push_back(make_link(at.server(i), at.edge(ceil_div(i))));
  for (std::size_t i = 1; i <= p.edge_count(); ++i)
    for (std::size_t j = 1; j <= p.aggregate_count(); ++j)
      if (ceil_div(i) == ceil_div(j)) links.push_back(make_link(at.edge(i), at.aggregate(j)));
  for (std::size_t i = 1; i <= p.aggregate_count(); ++i)
    for (std::size_t j = 1; j <= p.core_count(); ++j)
      if ((i - 1) % h + 1 == ceil_div(j)) links.push_back(make_link(at.aggregate(i), at.core(j)));
  return {DeviceGraph(p.node_count(), links, canonical_labels(p)),
          RoleAssignment(p, canonical_roles(p))};
}

// 1-based position of each node among the nodes sharing its role, in id
// order. Only core and server roles have more than one holder.
inline std::vector<int> role_slots(const RoleAssignment& a) {
  std::map<Role, int> seen;
  std::vector<int> slots(a.size());
  for (NodeId v = 0; v < a.size(); ++v) slots[v] = ++seen[a[v]];
  return slots;
}

// Dotted logical address for a role holder:
//   core        10.(k+1).group.slot
//   aggregate   10.pod.(k/2 + index).1
//   edge        10.pod.index.1
//   server      10.pod.edge_index.(slot + 1)
inline std::string logical_id(const Role& r, int slot, const FatTreeParams& p) {
  const int h = p.half();
  auto dotted = [](int a, int b, int c) {
    return "10." + std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(c);
  };
  switch (r.kind) {
    case RoleKind::kCore: return dotted(p.k() + 1, r.group, slot);
    case RoleKind::kAggregate: return dotted(r.group, h + r.index, 1);
    case RoleKind::kEdge: return dotted(r.group, r.index, 1);
    case RoleKind::kServer: return dotted((r.group - 1) / h + 1, (r.group - 1) % h + 1, slot + 1);
  }
  return {};
}

// Role table: [{device_id, role_kind, group, index, logical_id}...] in node
// id order; index is null for core and server roles.
inline nlohmann::json role_table_json(const RoleAssignment& a,
                                      const std::vector<std::string>& labels) {
  if (labels.size() != a.size()) throw UsageError("role table: label count mismatch");
  auto slots = role_slots(a);
  nlohmann::json out = nlohmann::json::array();
  for (NodeId v = 0; v < a.size(); ++v) {
    const Role& r = a[v];
    nlohmann::json row = {{"device_id", labels[v]},
                          {"role_kind", role_kind_name(r.kind)},
                          {"group", r.group},
                          {"index", nullptr},
                          {"logical_id", logical_id(r, slots[v], a.params())}};
    if (r.index != 0) row["index"] = r.index;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ftfix
