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

// Row-grouping role assignment, linear in the number of links.
//
// Within a correct FatTree, the k/2 edge switches of a pod share one
// switch-graph row and so do the k/2 cores of a core group. With fewer than
// k/4 link malfunctions at most 2x < k/2 rows change, so every such group
// keeps at least one untouched member. The untouched groups then identify
// the aggregates (their neighbors) together with pod and index, and the
// touched nodes rejoin the incomplete group they are most similar to.
//
// Any inconsistency, or a plan of k/4 or more steps, is reported as
// BoundExceeded so the caller can fall back to algo1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ftfix/blueprint.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/graph.hpp"
#include "ftfix/switch_graph.hpp"

namespace ftfix::algo2 {

// Thrown by the individual steps; run() converts it into BoundExceeded.
class BoundExceededError : public Error {
 public:
  using Error::Error;
};

struct BoundExceeded {
  std::string reason;
};

// Removes every node of degree <= k/4. Exactly k^3/4 must go.
inline SwitchSplit strip_low_degree(const DeviceGraph& g, const FatTreeParams& p) {
  if (g.size() != p.node_count())
    throw InputError("graph has " + std::to_string(g.size()) + " nodes, FatTree(" +
                     std::to_string(p.k()) + ") needs " + std::to_string(p.node_count()));
  std::vector<NodeId> low;
  for (NodeId v = 0; v < g.size(); ++v)
    if (4 * degree(g, v) <= static_cast<std::size_t>(p.k())) low.push_back(v);
  if (low.size() != p.server_count())
    throw BoundExceededError(std::to_string(low.size()) + " nodes of degree <= k/4, expected " +
                             std::to_string(p.server_count()) + " servers");
  return split_off_servers(g, std::move(low));
}

enum class GroupStatus : std::uint8_t { kCorrect, kIncomplete };
enum class GroupKind : std::uint8_t { kCore, kEdge, kMalfunction, kUnlabeled };

struct RowGroup {
  std::vector<NodeId> members;  // ascending
  std::uint64_t fingerprint = 0;
  GroupStatus status = GroupStatus::kIncomplete;
  GroupKind kind = GroupKind::kUnlabeled;
};

// Nodes with identical rows, ordered by smallest member. Fingerprints only
// pre-filter; membership is decided by exact row comparison.
inline std::vector<RowGroup> group_rows(const DeviceGraph& sw, const FatTreeParams& p) {
  std::vector<RowGroup> groups;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_fp;
  for (NodeId v = 0; v < sw.size(); ++v) {
    const std::uint64_t fp = row_fingerprint(sw, v);
    auto& bucket = by_fp[fp];
    auto hit = std::find_if(bucket.begin(), bucket.end(), [&](std::size_t gi) {
      return same_row(sw, groups[gi].members.front(), v);
    });
    if (hit != bucket.end()) {
      groups[*hit].members.push_back(v);
    } else {
      bucket.push_back(groups.size());
      groups.push_back({{v}, fp, GroupStatus::kIncomplete, GroupKind::kUnlabeled});
    }
  }
  for (auto& g : groups)
    g.status = g.members.size() == static_cast<std::size_t>(p.half()) ? GroupStatus::kCorrect
                                                                       : GroupStatus::kIncomplete;
  return groups;
}

// Shared rows of degree k are core groups, of degree k/2 edge groups, any
// other shared row a malfunction group. Unique rows stay unlabeled: they are
// aggregates or malfunction nodes, told apart in the next steps.
inline std::vector<RowGroup> label_groups(std::vector<RowGroup> groups, const DeviceGraph& sw,
                                          const FatTreeParams& p) {
  for (auto& g : groups) {
    if (g.members.size() < 2) {
      g.kind = GroupKind::kUnlabeled;
      continue;
    }
    const std::size_t d = degree(sw, g.members.front());
    if (d == static_cast<std::size_t>(p.k()))
      g.kind = GroupKind::kCore;
    else if (d == static_cast<std::size_t>(p.half()))
      g.kind = GroupKind::kEdge;
    else
      g.kind = GroupKind::kMalfunction;
  }
  return groups;
}

struct PartialAssignment {
  std::vector<std::optional<Role>> aggregates;   // per switch id
  std::vector<std::vector<NodeId>> pods;         // edge switches of pod p at [p - 1]
  std::vector<std::vector<NodeId>> core_groups;  // cores of group g at [g - 1]
};

// Pods and core groups are numbered by smallest member. Every neighbor of an
// edge group is an aggregate of that pod; every neighbor of a core group is
// an aggregate with that index.
inline PartialAssignment derive_aggregates(const std::vector<RowGroup>& groups,
                                           const DeviceGraph& sw, const FatTreeParams& p) {
  const int h = p.half();
  PartialAssignment out;
  out.aggregates.resize(sw.size());
  std::vector<int> pod_of(sw.size(), 0);
  std::vector<int> index_of(sw.size(), 0);
  std::vector<char> grouped(sw.size(), 0);
  for (const auto& g : groups) {
    if (g.kind != GroupKind::kCore && g.kind != GroupKind::kEdge) continue;
    if (g.members.size() > static_cast<std::size_t>(h))
      throw BoundExceededError("row group of " + std::to_string(g.members.size()) +
                               " nodes exceeds k/2");
    for (NodeId v : g.members) grouped[v] = 1;
    auto& target = g.kind == GroupKind::kEdge ? out.pods : out.core_groups;
    auto& field = g.kind == GroupKind::kEdge ? pod_of : index_of;
    target.push_back(g.members);
    const int id = static_cast<int>(target.size());
    for (NodeId w : sw.neighbors(g.members.front())) {
      if (field[w] != 0 && field[w] != id)
        throw BoundExceededError("switch " + sw.device_id(w) + " adjacent to two " +
                                 (g.kind == GroupKind::kEdge ? "edge" : "core") + " groups");
      field[w] = id;
    }
  }
  if (out.pods.size() != static_cast<std::size_t>(p.k()))
    throw BoundExceededError("found " + std::to_string(out.pods.size()) + " edge groups, expected " +
                             std::to_string(p.k()));
  if (out.core_groups.size() != static_cast<std::size_t>(h))
    throw BoundExceededError("found " + std::to_string(out.core_groups.size()) +
                             " core groups, expected " + std::to_string(h));

  std::vector<char> taken(p.aggregate_count(), 0);
  std::size_t count = 0;
  for (NodeId v = 0; v < sw.size(); ++v) {
    if (pod_of[v] == 0 && index_of[v] == 0) continue;
    if (grouped[v])
      throw BoundExceededError("switch " + sw.device_id(v) + " is both grouped and an aggregate");
    if (pod_of[v] == 0 || index_of[v] == 0)
      throw BoundExceededError("aggregate " + sw.device_id(v) + " lacks a pod or an index");
    auto slot = static_cast<std::size_t>((pod_of[v] - 1) * h + index_of[v] - 1);
    if (taken[slot])
      throw BoundExceededError("two switches claim " +
                               to_string(Role::aggregate(pod_of[v], index_of[v])));
    taken[slot] = 1;
    out.aggregates[v] = Role::aggregate(pod_of[v], index_of[v]);
    ++count;
  }
  if (count != p.aggregate_count())
    throw BoundExceededError("found " + std::to_string(count) + " aggregates, expected " +
                             std::to_string(p.aggregate_count()));
  return out;
}

// Remaining switches join the incomplete core group or pod whose first member
// they share most neighbors with (cores before pods, lower id first on ties).
// Returns roles for every switch; edge indices follow member order.
inline std::vector<Role> resolve_malfunction_nodes(PartialAssignment partial, const DeviceGraph& sw,
                                                   const FatTreeParams& p) {
  const auto h = static_cast<std::size_t>(p.half());
  std::vector<char> placed(sw.size(), 0);
  for (NodeId v = 0; v < sw.size(); ++v) placed[v] = partial.aggregates[v].has_value();
  for (const auto& g : partial.pods)
    for (NodeId v : g) placed[v] = 1;
  for (const auto& g : partial.core_groups)
    for (NodeId v : g) placed[v] = 1;

  std::vector<std::vector<NodeId>*> candidates;
  for (auto& g : partial.core_groups) candidates.push_back(&g);
  for (auto& g : partial.pods) candidates.push_back(&g);

  for (NodeId v = 0; v < sw.size(); ++v) {
    if (placed[v]) continue;
    std::vector<NodeId>* best = nullptr;
    std::size_t best_sim = 0;
    for (auto* g : candidates) {
      if (g->size() >= h) continue;
      std::size_t s = similarity(sw, v, g->front());
      if (best == nullptr || s > best_sim) {
        best = g;
        best_sim = s;
      }
    }
    if (best == nullptr)
      throw BoundExceededError("no incomplete group left for switch " + sw.device_id(v));
    best->push_back(v);
  }
  for (const auto* g : candidates)
    if (g->size() != h) throw BoundExceededError("group sizes cannot be balanced");

  std::vector<Role> roles(sw.size());
  for (NodeId v = 0; v < sw.size(); ++v)
    if (partial.aggregates[v]) roles[v] = *partial.aggregates[v];
  for (std::size_t g = 0; g < partial.core_groups.size(); ++g)
    for (NodeId v : partial.core_groups[g]) roles[v] = Role::core(static_cast<int>(g + 1));
  for (std::size_t pod = 0; pod < partial.pods.size(); ++pod) {
    auto members = partial.pods[pod];
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
      roles[members[i]] = Role::edge(static_cast<int>(pod + 1), static_cast<int>(i + 1));
  }
  return roles;
}

struct Result {
  RoleAssignment assignment;
  FixationPlan plan;
};

using Outcome = std::variant<Result, BoundExceeded>;

// Edge switches whose server count in `g` is not k/2.
inline std::vector<ServerFault> check_servers(const DeviceGraph& g, const SwitchSplit& split,
                                              const RoleAssignment& a) {
  std::vector<char> is_server(g.size(), 0);
  for (NodeId s : split.servers) is_server[s] = 1;
  std::vector<ServerFault> faults;
  const int h = a.params().half();
  for (NodeId v = 0; v < g.size(); ++v) {
    if (a[v].kind != RoleKind::kEdge) continue;
    int servers = 0;
    for (NodeId w : g.neighbors(v)) servers += is_server[w];
    if (servers != h) faults.push_back({v, h, servers});
  }
  return faults;
}

inline Outcome run(const DeviceGraph& g, const FatTreeParams& p) {
  try {
    SwitchSplit split = strip_low_degree(g, p);
    auto groups = label_groups(group_rows(split.switches, p), split.switches, p);
    auto partial = derive_aggregates(groups, split.switches, p);
    auto switch_roles = resolve_malfunction_nodes(std::move(partial), split.switches, p);
    RoleAssignment assignment = complete_assignment(g, split, switch_roles, p);
    FixationPlan plan = compute_fixation(g, assignment);
    if (4 * plan.steps() >= static_cast<std::size_t>(p.k()))
      throw BoundExceededError("plan needs " + std::to_string(plan.steps()) +
                               " steps, more than 2*(k/4-1) matrix entries");
    for (const auto& f : check_servers(g, split, assignment)) plan.actions.emplace_back(f);
    return Result{std::move(assignment), std::move(plan)};
  } catch (const BoundExceededError& e) {
    return BoundExceeded{e.what()};
  }
}

}  // namespace ftfix::algo2
