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

// Graph file formats.
//
// Text format, one record per line:
//
//   n <count>
//   e <u> <v>        (one per undirected link, u < v, sorted)
//
// Blank lines and lines starting with '#' are ignored on read. Node labels
// are the decimal ids.
//
// JSON format: {"n": <count>, "devices": [<label>...], "edges": [[u,v]...]}
// with the same link ordering. Both writers are deterministic.

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ftfix/graph.hpp"

namespace ftfix {

inline void write_text(std::ostream& os, const DeviceGraph& g) {
  os << "n " << g.size() << '\n';
  for (const auto& l : g.links()) os << "e " << l.u << ' ' << l.v << '\n';
}

inline DeviceGraph read_text(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<Link> links;
  auto fail = [&](const std::string& what) {
    throw InputError("graph text line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "n") {
      if (have_n) fail("duplicate 'n' header");
      long long count = -1;
      if (!(ls >> count) || count < 0) fail("bad node count");
      n = static_cast<std::size_t>(count);
      have_n = true;
    } else if (tag == "e") {
      if (!have_n) fail("'e' before 'n' header");
      long long u = -1;
      long long v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("bad link record");
      links.push_back(make_link(static_cast<NodeId>(u), static_cast<NodeId>(v)));
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing data");
  }
  if (!have_n) throw InputError("graph text: missing 'n' header");
  return DeviceGraph(n, links);
}

inline nlohmann::json to_json(const DeviceGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& l : g.links()) edges.push_back({l.u, l.v});
  return {{"n", g.size()}, {"devices", g.device_ids()}, {"edges", std::move(edges)}};
}

inline DeviceGraph graph_from_json(const nlohmann::json& j) {
  try {
    auto n = j.at("n").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("devices")) labels = j.at("devices").get<std::vector<std::string>>();
    std::vector<Link> links;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("graph json: edge must be [u,v]");
      links.push_back(make_link(e[0].get<NodeId>(), e[1].get<NodeId>()));
    }
    return DeviceGraph(n, links, std::move(labels));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("graph json: ") + ex.what());
  }
}

inline void write_json(std::ostream& os, const DeviceGraph& g) {
  os << to_json(g).dump() << '\n';
}

inline DeviceGraph read_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("graph json: ") + ex.what());
  }
  return graph_from_json(j);
}

// Format is chosen by content: JSON when the first non-space byte is '{'.
inline DeviceGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  in >> std::ws;
  if (in.peek() == '{') return read_json(in);
  return read_text(in);
}

// Writes JSON when the path ends in ".json", text otherwise.
inline void save_graph(const std::filesystem::path& path, const DeviceGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  if (path.extension() == ".json")
    write_json(out, g);
  else
    write_text(out, g);
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace ftfix
