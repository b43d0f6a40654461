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

#include <gtest/gtest.h>

#include <random>

#include "ftfix/blueprint.hpp"
#include "ftfix/graph.hpp"
#include "ftfix/injector.hpp"
#include "ftfix/switch_graph.hpp"

namespace ftfix {
namespace {

DeviceGraph path(std::size_t n) {
  std::vector<Link> links;
  for (NodeId v = 0; v + 1 < n; ++v) links.push_back({v, v + 1});
  return DeviceGraph(n, links);
}

TEST(DeviceGraph, SymmetricIrreflexiveSorted) {
  std::vector<Link> links{{3, 1}, {0, 2}, {1, 0}};
  DeviceGraph g(4, links);
  EXPECT_EQ(g.edge_count(), 3u);
  for (NodeId u = 0; u < 4; ++u) {
    EXPECT_FALSE(g.has_edge(u, u));
    for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(g.has_edge(u, v), g.has_edge(v, u));
    auto row = g.neighbors(u);
    EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
  }
  EXPECT_EQ(g.device_ids().size(), g.size());
  EXPECT_EQ(g.device_id(2), "2");
}

TEST(DeviceGraph, RejectsBadInput) {
  std::vector<Link> loop{{1, 1}};
  EXPECT_THROW(DeviceGraph(3, loop), InputError);
  std::vector<Link> dup{{0, 1}, {1, 0}};
  EXPECT_THROW(DeviceGraph(3, dup), InputError);
  std::vector<Link> out{{0, 3}};
  EXPECT_THROW(DeviceGraph(3, out), InputError);
  EXPECT_THROW(DeviceGraph(2, {}, {"a"}), InputError);
  EXPECT_THROW(path(3).check(3), UsageError);
}

TEST(Degree, BlueprintCounts) {
  auto bp4 = generate_blueprint(FatTreeParams(4));
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(degree(bp4.graph, CanonicalLayout{FatTreeParams(4)}.core(j)), 4u);
  EXPECT_EQ(degree(DeviceGraph(3, {}), 0), 0u);
  const FatTreeParams p20(20);
  auto bp20 = generate_blueprint(p20);
  for (std::size_t i = 1; i <= p20.server_count(); ++i)
    ASSERT_EQ(degree(bp20.graph, CanonicalLayout{p20}.server(i)), 1u);
}

TEST(Similarity, SelfIsDegreeAndPodStructure) {
  const FatTreeParams p(4);
  auto bp = generate_blueprint(p);
  for (NodeId v = 0; v < bp.graph.size(); ++v) EXPECT_EQ(similarity(bp.graph, v, v), degree(bp.graph, v));

  // Switch graph: the two edge switches of pod 1 share both aggregates.
  std::vector<NodeId> servers;
  for (std::size_t i = 1; i <= p.server_count(); ++i) servers.push_back(CanonicalLayout{p}.server(i));
  auto split = split_off_servers(bp.graph, servers);
  // Switch ids keep node order: cores 0..3, aggregates 4..11, edges 12..19.
  EXPECT_EQ(similarity(split.switches, 12, 13), 2u);
  // core-1/core-2 form group 1, core-3/core-4 group 2.
  EXPECT_EQ(similarity(split.switches, 0, 2), 0u);
  EXPECT_EQ(similarity(split.switches, 0, 1), 4u);
}

TEST(Hamming, OrderedPairUnits) {
  auto g = path(5);
  EXPECT_EQ(hamming_distance(g, g), 0u);
  std::vector<Link> removed{{1, 2}};
  auto h = with_edits(g, removed, {});
  EXPECT_EQ(hamming_distance(g, h), 2u);
  EXPECT_EQ(hamming_distance(h, g), 2u);
  EXPECT_THROW(hamming_distance(g, path(4)), UsageError);

  auto bp = generate_blueprint(FatTreeParams(4));
  MalfunctionSpec spec;
  spec.seed = 11;
  spec.removals = 2;
  spec.additions = 1;
  auto inj = inject(bp.graph, spec);
  EXPECT_EQ(hamming_distance(bp.graph, inj.graph), 6u);
}

TEST(Hamming, MatchesDenseReference) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<Link> a, b;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng() % 3 == 0) a.push_back({u, v});
        if (rng() % 3 == 0) b.push_back({u, v});
      }
    DeviceGraph ga(n, a), gb(n, b);
    std::size_t ordered = 0, common = 0;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        ordered += ga.has_edge(u, v) != gb.has_edge(u, v);
        common += u < v && ga.has_edge(u, v) && gb.has_edge(u, v);
      }
    EXPECT_EQ(hamming_distance(ga, gb), ordered);
    EXPECT_EQ(common_edges(ga, gb), common);
    // Undirected form of the edit/common-edge identity.
    EXPECT_EQ(hamming_distance(ga, gb) / 2 + 2 * common_edges(ga, gb), ga.edge_count() + gb.edge_count());
  }
}

TEST(Fingerprint, FollowsRows) {
  const FatTreeParams p(4);
  auto bp = generate_blueprint(p);
  std::vector<NodeId> servers;
  for (std::size_t i = 1; i <= p.server_count(); ++i) servers.push_back(CanonicalLayout{p}.server(i));
  auto sw = split_off_servers(bp.graph, servers).switches;
  EXPECT_EQ(row_fingerprint(sw, 12), row_fingerprint(sw, 13));
  EXPECT_TRUE(same_row(sw, 12, 13));
  EXPECT_NE(row_fingerprint(sw, 12), row_fingerprint(sw, 14));

  std::vector<Link> removed{make_link(12, 4)};
  auto cut = with_edits(sw, removed, {});
  EXPECT_NE(row_fingerprint(cut, 12), row_fingerprint(cut, 13));
  EXPECT_FALSE(same_row(cut, 12, 13));
  EXPECT_EQ(fingerprint_of({}), fingerprint_of({}));
}

TEST(InducedSubgraph, KeepsLabelsAndLinks) {
  DeviceGraph g(4, std::vector<Link>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {"a", "b", "c", "d"});
  auto sub = induced_subgraph(g, std::vector<NodeId>{1, 2, 3});
  EXPECT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.edge_count(), 2u);
  EXPECT_EQ(sub.device_id(0), "b");
  EXPECT_TRUE(sub.has_edge(0, 1));
  EXPECT_TRUE(sub.has_edge(1, 2));
}

TEST(WithEdits, RejectsStaleEdits) {
  auto g = path(4);
  std::vector<Link> missing{{0, 3}};
  EXPECT_THROW(with_edits(g, missing, {}), PlanStaleError);
  std::vector<Link> present{{0, 1}};
  EXPECT_THROW(with_edits(g, {}, present), PlanStaleError);
  auto h = with_edits(g, present, missing);
  EXPECT_TRUE(h.has_edge(0, 3));
  EXPECT_FALSE(h.has_edge(0, 1));
}

TEST(BitRows, AgreesWithAdjacency) {
  auto bp = generate_blueprint(FatTreeParams(6));
  BitRows rows(bp.graph);
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    NodeId u = rng() % bp.graph.size(), v = rng() % bp.graph.size();
    EXPECT_EQ(rows.test(u, v), bp.graph.has_edge(u, v));
    EXPECT_EQ(rows.similarity(u, v), similarity(bp.graph, u, v));
  }
  auto mask = rows.mask(std::vector<NodeId>{0, 1, 2});
  for (NodeId v = 0; v < bp.graph.size(); ++v) {
    std::size_t want = bp.graph.has_edge(v, 0) + bp.graph.has_edge(v, 1) + bp.graph.has_edge(v, 2);
    EXPECT_EQ(rows.overlap(v, mask), want);
  }
}

}  // namespace
}  // namespace ftfix
