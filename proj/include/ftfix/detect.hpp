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

#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <variant>

#include "ftfix/algo1.hpp"
#include "ftfix/algo2.hpp"
#include "ftfix/blueprint.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/graph.hpp"

namespace ftfix {

enum class DetectMode { kAlgo1, kAlgo2, kAuto, kRace };

struct DetectReport {
  FatTreeParams params{4};
  int algo = 0;  // algorithm whose plan is reported; 0 when none
  std::optional<RoleAssignment> assignment;
  FixationPlan plan;
  std::optional<std::string> bound_exceeded;  // algo2 escape reason, if it ran and escaped
  bool beyond_bound = false;                  // algo1 plan has k/2 or more steps
  double seconds = 0.0;

  bool ok() const { return assignment.has_value(); }
};

inline FatTreeParams params_for(const DeviceGraph& g) {
  auto p = infer_params(g.size());
  if (!p)
    throw InputError(std::to_string(g.size()) +
                     " nodes is not k^3/4 + 5k^2/4 for any even k >= 4");
  return *p;
}

// auto: algo2, falling back to algo1 on BoundExceeded.
// race: both concurrently; an in-bound algo2 result wins.
inline DetectReport detect(const DeviceGraph& g, DetectMode mode) {
  const FatTreeParams p = params_for(g);
  const auto start = std::chrono::steady_clock::now();
  DetectReport report;
  report.params = p;

  auto take_algo1 = [&](algo1::Result r) {
    report.algo = 1;
    report.beyond_bound = r.beyond_bound;
    report.plan = std::move(r.plan);
    report.assignment = std::move(r.assignment);
  };
  auto take_algo2 = [&](algo2::Outcome o) {
    if (auto* r = std::get_if<algo2::Result>(&o)) {
      report.algo = 2;
      report.plan = std::move(r->plan);
      report.assignment = std::move(r->assignment);
      return true;
    }
    report.bound_exceeded = std::get<algo2::BoundExceeded>(o).reason;
    return false;
  };

  switch (mode) {
    case DetectMode::kAlgo1:
      take_algo1(algo1::run(g, p));
      break;
    case DetectMode::kAlgo2:
      take_algo2(algo2::run(g, p));
      break;
    case DetectMode::kAuto:
      if (!take_algo2(algo2::run(g, p))) take_algo1(algo1::run(g, p));
      break;
    case DetectMode::kRace: {
      auto second = std::async(std::launch::async, [&g, &p] { return algo1::run(g, p); });
      algo2::Outcome first = algo2::run(g, p);
      algo1::Result fallback = second.get();
      if (!take_algo2(std::move(first))) take_algo1(std::move(fallback));
      break;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ftfix
