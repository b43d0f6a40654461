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
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftfix/error.hpp"

namespace ftfix {

using NodeId = std::uint32_t;

// Undirected link, normalized so that u < v.
struct Link {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

inline Link make_link(NodeId a, NodeId b) {
  return a < b ? Link{a, b} : Link{b, a};
}

// Simple undirected graph over dense ids 0..n-1, stored as sorted neighbor
// lists. Immutable after construction; every accessor is a pure read.
class DeviceGraph {
 public:
  DeviceGraph() = default;

  // Throws InputError on self-loops, duplicate links or out-of-range ids.
  // Empty `device_ids` means "use the decimal node id as label".
  DeviceGraph(std::size_t n, std::span<const Link> links,
              std::vector<std::string> device_ids = {})
      : ids_(std::move(device_ids)) {
    if (ids_.empty()) {
      ids_.reserve(n);
      for (std::size_t i = 0; i < n; ++i) ids_.push_back(std::to_string(i));
    } else if (ids_.size() != n) {
      throw InputError("device label count " + std::to_string(ids_.size()) +
                       " does not match node count " + std::to_string(n));
    }

    std::vector<std::size_t> deg(n, 0);
    for (const auto& l : links) {
      if (l.u >= n || l.v >= n)
        throw InputError("link endpoint out of range: " + std::to_string(l.u) +
                         "-" + std::to_string(l.v));
      if (l.u == l.v)
        throw InputError("self-loop on node " + std::to_string(l.u));
      ++deg[l.u];
      ++deg[l.v];
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& l : links) {
      adj_[fill[l.u]++] = l.v;
      adj_[fill[l.v]++] = l.u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto first = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
      auto last = adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last)
        throw InputError("duplicate link at node " + std::to_string(i));
    }
  }

  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    check(v);
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  bool has_edge(NodeId u, NodeId v) const {
    check(u);
    check(v);
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  const std::string& device_id(NodeId v) const {
    check(v);
    return ids_[v];
  }
  const std::vector<std::string>& device_ids() const { return ids_; }

  // All links with u < v, sorted lexically.
  std::vector<Link> links() const {
    std::vector<Link> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < size(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  void check(NodeId v) const {
    if (v >= size())
      throw UsageError("node id " + std::to_string(v) + " out of range (n=" +
                       std::to_string(size()) + ")");
  }

  friend bool operator==(const DeviceGraph& a, const DeviceGraph& b) {
    return a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
  std::vector<std::string> ids_;
};

inline std::size_t degree(const DeviceGraph& g, NodeId v) {
  return g.neighbors(v).size();
}

inline std::size_t sorted_intersection_size(std::span<const NodeId> a,
                                            std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Number of common direct neighbors (inner product of the two rows).
inline std::size_t similarity(const DeviceGraph& g, NodeId u, NodeId v) {
  return sorted_intersection_size(g.neighbors(u), g.neighbors(v));
}

// Ordered pairs (u,v) on which the two adjacency relations disagree; twice
// the number of undirected link edits between the graphs.
inline std::size_t hamming_distance(const DeviceGraph& a, const DeviceGraph& b) {
  if (a.size() != b.size())
    throw UsageError("hamming_distance: size mismatch " +
                     std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  std::size_t d = 0;
  for (NodeId v = 0; v < a.size(); ++v) {
    auto ra = a.neighbors(v);
    auto rb = b.neighbors(v);
    d += ra.size() + rb.size() - 2 * sorted_intersection_size(ra, rb);
  }
  return d;
}

// Undirected links present in both graphs under the identity alignment.
inline std::size_t common_edges(const DeviceGraph& a, const DeviceGraph& b) {
  if (a.size() != b.size()) throw UsageError("common_edges: size mismatch");
  std::size_t c = 0;
  for (NodeId v = 0; v < a.size(); ++v)
    c += sorted_intersection_size(a.neighbors(v), b.neighbors(v));
  return c / 2;
}

// FNV-1a over the sorted neighbor ids and the row length. Equal rows give
// equal fingerprints; unequal rows may collide, so callers that group by
// fingerprint must confirm with an exact row comparison.
inline std::uint64_t fingerprint_of(std::span<const NodeId> row) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(row.size());
  for (NodeId id : row) mix(id);
  return h;
}

inline std::uint64_t row_fingerprint(const DeviceGraph& g, NodeId v) {
  return fingerprint_of(g.neighbors(v));
}

inline bool same_row(const DeviceGraph& g, NodeId u, NodeId v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// Subgraph induced by `keep` (any order); node i of the result is keep[i].
inline DeviceGraph induced_subgraph(const DeviceGraph& g,
                                    std::span<const NodeId> keep) {
  constexpr NodeId kAbsent = ~NodeId{0};
  std::vector<NodeId> remap(g.size(), kAbsent);
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    g.check(keep[i]);
    remap[keep[i]] = static_cast<NodeId>(i);
    ids.push_back(g.device_id(keep[i]));
  }
  std::vector<Link> links;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (NodeId w : g.neighbors(keep[i]))
      if (remap[w] != kAbsent && static_cast<NodeId>(i) < remap[w])
        links.push_back({static_cast<NodeId>(i), remap[w]});
  return DeviceGraph(keep.size(), links, std::move(ids));
}

// Copy of `g` with `removed` deleted and `added` inserted. Throws
// PlanStaleError when a removal targets a non-link or an addition an
// existing link.
inline DeviceGraph with_edits(const DeviceGraph& g, std::span<const Link> removed,
                              std::span<const Link> added) {
  std::vector<Link> links = g.links();
  std::vector<Link> drop(removed.begin(), removed.end());
  for (auto& l : drop) l = make_link(l.u, l.v);
  std::sort(drop.begin(), drop.end());
  if (std::adjacent_find(drop.begin(), drop.end()) != drop.end())
    throw PlanStaleError("link removed twice");
  for (const auto& l : drop)
    if (!std::binary_search(links.begin(), links.end(), l))
      throw PlanStaleError("cannot remove missing link " +
                           std::to_string(l.u) + "-" + std::to_string(l.v));
  std::vector<Link> kept;
  kept.reserve(links.size());
  std::set_difference(links.begin(), links.end(), drop.begin(), drop.end(),
                      std::back_inserter(kept));
  for (Link l : added) {
    l = make_link(l.u, l.v);
    if (g.has_edge(l.u, l.v))
      throw PlanStaleError("cannot add existing link " + std::to_string(l.u) +
                           "-" + std::to_string(l.v));
    kept.push_back(l);
  }
  return DeviceGraph(g.size(), kept, g.device_ids());
}

// Dense bit-packed adjacency rows; similarity becomes a popcount over the
// row intersection. Intended for switch-sized graphs (a few thousand nodes).
class BitRows {
 public:
  explicit BitRows(const DeviceGraph& g)
      : n_(g.size()), words_((g.size() + 63) / 64), bits_(n_ * words_, 0) {
    for (NodeId u = 0; u < n_; ++u)
      for (NodeId v : g.neighbors(u)) bits_[u * words_ + v / 64] |= bit(v);
  }

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  std::span<const std::uint64_t> row(NodeId v) const {
    if (v >= n_) throw UsageError("BitRows: node id out of range");
    return {bits_.data() + v * words_, words_};
  }

  bool test(NodeId u, NodeId v) const {
    return (row(u)[v / 64] & bit(v)) != 0;
  }

  std::size_t similarity(NodeId u, NodeId v) const {
    return overlap(u, row(v));
  }

  // popcount(row(v) & mask)
  std::size_t overlap(NodeId v, std::span<const std::uint64_t> mask) const {
    auto r = row(v);
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(r[w] & mask[w]);
    return c;
  }

  std::vector<std::uint64_t> mask(std::span<const NodeId> nodes) const {
    std::vector<std::uint64_t> m(words_, 0);
    for (NodeId v : nodes) {
      if (v >= n_) throw UsageError("BitRows: mask id out of range");
      m[v / 64] |= bit(v);
    }
    return m;
  }

 private:
  static std::uint64_t bit(NodeId v) { return std::uint64_t{1} << (v % 64); }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ftfix
