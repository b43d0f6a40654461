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
#include <ostream>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ftfix/blueprint.hpp"
#include "ftfix/graph.hpp"

namespace ftfix {

struct Disconnect {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Disconnect&, const Disconnect&) = default;
};

struct Connect {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Connect&, const Connect&) = default;
};

// Edge switch whose server count differs from k/2 in the physical graph.
// Advisory only: applying a plan never touches the graph for these.
struct ServerFault {
  NodeId edge_switch = 0;
  int expected = 0;
  int actual = 0;
  friend bool operator==(const ServerFault&, const ServerFault&) = default;
};

using FixAction = std::variant<Disconnect, Connect, ServerFault>;

struct FixationPlan {
  std::vector<FixAction> actions;

  // Number of link actions (disconnects + connects).
  std::size_t steps() const {
    return static_cast<std::size_t>(std::count_if(actions.begin(), actions.end(), [](const auto& a) {
      return !std::holds_alternative<ServerFault>(a);
    }));
  }
  bool empty() const { return steps() == 0; }

  friend bool operator==(const FixationPlan&, const FixationPlan&) = default;
};

// Disconnects for links present only in `physical`, then connects for links
// present only in expected_adjacency(assignment); each block sorted by (u,v)
// with u < v.
inline FixationPlan compute_fixation(const DeviceGraph& physical, const RoleAssignment& assignment) {
  if (physical.size() != assignment.size())
    throw UsageError("compute_fixation: graph has " + std::to_string(physical.size()) +
                     " nodes, assignment " + std::to_string(assignment.size()));
  DeviceGraph expected = expected_adjacency(assignment);
  FixationPlan plan;
  std::vector<FixAction> connects;
  for (NodeId u = 0; u < physical.size(); ++u) {
    auto have = physical.neighbors(u);
    auto want = expected.neighbors(u);
    auto i = std::upper_bound(have.begin(), have.end(), u);
    auto j = std::upper_bound(want.begin(), want.end(), u);
    while (i != have.end() || j != want.end()) {
      if (j == want.end() || (i != have.end() && *i < *j)) {
        plan.actions.push_back(Disconnect{u, *i++});
      } else if (i == have.end() || *j < *i) {
        connects.push_back(Connect{u, *j++});
      } else {
        ++i;
        ++j;
      }
    }
  }
  plan.actions.insert(plan.actions.end(), connects.begin(), connects.end());
  return plan;
}

// Applies link actions in order; throws PlanStaleError when an action does
// not match the current link state.
inline DeviceGraph apply_fixation(const DeviceGraph& g, const FixationPlan& plan) {
  std::set<Link> links;
  for (const auto& l : g.links()) links.insert(l);
  for (const auto& action : plan.actions) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Disconnect>) {
            g.check(a.u);
            g.check(a.v);
            if (links.erase(make_link(a.u, a.v)) == 0)
              throw PlanStaleError("disconnect " + g.device_id(a.u) + "-" + g.device_id(a.v) +
                                   ": link not present");
          } else if constexpr (std::is_same_v<T, Connect>) {
            g.check(a.u);
            g.check(a.v);
            if (a.u == a.v) throw PlanStaleError("connect: self-loop");
            if (!links.insert(make_link(a.u, a.v)).second)
              throw PlanStaleError("connect " + g.device_id(a.u) + "-" + g.device_id(a.v) +
                                   ": link already present");
          }
        },
        action);
  }
  std::vector<Link> out(links.begin(), links.end());
  return DeviceGraph(g.size(), out, g.device_ids());
}

// Logical address per node id.
struct AddressTable {
  std::vector<std::string> addresses;
};

inline AddressTable autoconfigure(const RoleAssignment& a) {
  auto slots = role_slots(a);
  AddressTable table;
  table.addresses.reserve(a.size());
  for (NodeId v = 0; v < a.size(); ++v)
    table.addresses.push_back(logical_id(a[v], slots[v], a.params()));
  return table;
}

// {device_id: address}, keys sorted.
inline nlohmann::json to_json(const AddressTable& t, const std::vector<std::string>& labels) {
  if (labels.size() != t.addresses.size()) throw UsageError("address table: label count mismatch");
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]] = t.addresses[i];
  return out;
}

inline nlohmann::json action_json(const FixAction& action, const DeviceGraph& g) {
  return std::visit(
      [&g](const auto& a) -> nlohmann::json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Disconnect>) {
          return {{"op", "disconnect"}, {"u", g.device_id(a.u)}, {"v", g.device_id(a.v)}};
        } else if constexpr (std::is_same_v<T, Connect>) {
          return {{"op", "connect"}, {"u", g.device_id(a.u)}, {"v", g.device_id(a.v)}};
        } else {
          return {{"op", "server-fault"},
                  {"edge", g.device_id(a.edge_switch)},
                  {"expected", a.expected},
                  {"actual", a.actual}};
        }
      },
      action);
}

// JSON lines, one action per line, labels taken from `g`.
inline void write_plan(std::ostream& os, const FixationPlan& plan, const DeviceGraph& g) {
  for (const auto& a : plan.actions) os << action_json(a, g).dump() << '\n';
}

}  // namespace ftfix
