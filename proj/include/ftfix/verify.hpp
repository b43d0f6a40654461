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

#include "ftfix/algo1.hpp"
#include "ftfix/blueprint.hpp"
#include "ftfix/graph.hpp"

namespace ftfix {

// True iff the graph is a correct FatTree(k): algo1 finds nothing to fix.
inline bool verify_repaired(const DeviceGraph& g, const FatTreeParams& p) {
  if (g.size() != p.node_count()) return false;
  return algo1::run(g, p).plan.empty();
}

}  // namespace ftfix
