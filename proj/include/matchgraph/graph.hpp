// Copyright 2026 The matchgraph Authors
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
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matchgraph/common.hpp"

namespace matchgraph {

/// Undirected simple graph on vertices 0..n-1.  Edges are stored as a
/// sorted set of ordered-min pairs so the representation is canonical.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n) {
    require(n >= 1, ErrorCode::ParseError, "graph needs at least one vertex");
  }

  static Graph path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
  }

  static Graph cycle(int n) {
    require(n >= 3, ErrorCode::ParseError, "cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
  }

  int n() const { return n_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  void add_edge(int u, int v) {
    require(u >= 0 && u < n_ && v >= 0 && v < n_, ErrorCode::ParseError,
            "edge endpoint out of range");
    require(u != v, ErrorCode::ParseError, "self-loop rejected");
    auto e = std::minmax(u, v);
    require(!edges_.count({e.first, e.second}), ErrorCode::ParseError,
            "duplicate edge rejected");
    edges_.insert({e.first, e.second});
  }

  bool has_edge(int u, int v) const {
    auto e = std::minmax(u, v);
    return edges_.count({e.first, e.second}) > 0;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (auto& [u, v] : edges_) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto& [u, v] : edges_) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  bool connected() const {
    if (n_ == 0) return false;
    auto adj = adjacency();
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          queue.push_back(w);
        }
    }
    return count == n_;
  }

  bool is_tree() const { return connected() && edge_count() == n_ - 1; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::set<std::pair<int, int>> edges_;
};

enum class GraphClass { Path, Cycle, Other };

inline const char* graph_class_name(GraphClass c) {
  switch (c) {
    case GraphClass::Path: return "path";
    case GraphClass::Cycle: return "cycle";
    case GraphClass::Other: return "other";
  }
  return "?";
}

/// Path <=> two degree-1 vertices and the rest degree 2 (single vertex and
/// single edge included); Cycle <=> all degrees 2; Other otherwise.
inline GraphClass classify(const Graph& g) {
  require(g.connected(), ErrorCode::DisconnectedGraph,
          "classification requires a connected graph");
  if (g.n() == 1) return GraphClass::Path;
  auto deg = g.degrees();
  int deg1 = 0, deg2 = 0;
  for (int d : deg) {
    if (d == 1) ++deg1;
    else if (d == 2) ++deg2;
  }
  if (deg1 == 2 && deg1 + deg2 == g.n()) return GraphClass::Path;
  if (deg2 == g.n()) return GraphClass::Cycle;
  return GraphClass::Other;
}

/// Text format: "n <count>" on the first line, then one "u v" edge per
/// line; '#' starts a comment.  Loops, duplicates and out-of-range
/// indices are rejected.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  int n = -1;
  Graph g;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      if (!(ls >> tag)) continue;  // blank line before header
      require(tag == "n", ErrorCode::ParseError,
              "expected 'n <count>' header, got '" + tag + "'");
      require(static_cast<bool>(ls >> n) && n >= 1, ErrorCode::ParseError,
              "bad vertex count");
      g = Graph(n);
      std::string extra;
      require(!(ls >> extra), ErrorCode::ParseError,
              "trailing tokens after header");
      continue;
    }
    int u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    require(static_cast<bool>(ls >> v), ErrorCode::ParseError,
            "edge line " + std::to_string(lineno) + " needs two indices");
    std::string extra;
    require(!(ls >> extra), ErrorCode::ParseError,
            "trailing tokens on edge line " + std::to_string(lineno));
    g.add_edge(u, v);
  }
  require(n >= 1, ErrorCode::ParseError, "missing 'n <count>' header");
  return g;
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << "\n";
  for (auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

/// BFS distances from src; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
  auto adj = g.adjacency();
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

/// Unique path between two vertices of a tree, endpoints included.
inline std::vector<int> tree_path(const Graph& tree, int from, int to) {
  auto adj = tree.adjacency();
  std::vector<int> parent(tree.n(), -1);
  std::vector<char> seen(tree.n(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
  }
  require(seen[to], ErrorCode::IndexOutOfRange, "vertices not connected");
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace matchgraph
