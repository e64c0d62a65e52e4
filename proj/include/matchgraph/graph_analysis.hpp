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
#include <vector>

#include "matchgraph/common.hpp"
#include "matchgraph/graph.hpp"

namespace matchgraph {

/// Spanning tree that keeps every edge incident to the lowest-index vertex
/// of degree >= 3, then grows by breadth-first search.  The result is never
/// a path, which is what the compilation strategies rely on.
inline Graph spanning_tree_with_branch(const Graph& g) {
  require(g.connected(), ErrorCode::DisconnectedGraph,
          "spanning tree requires a connected graph");
  auto deg = g.degrees();
  int branch = -1;
  for (int v = 0; v < g.n(); ++v)
    if (deg[v] >= 3) {
      branch = v;
      break;
    }
  require(branch >= 0, ErrorCode::NoBranchVertex,
          "graph has no vertex of degree >= 3 (it is a path or a cycle)");

  auto adj = g.adjacency();
  Graph tree(g.n());
  std::vector<char> in_tree(g.n(), 0);
  in_tree[branch] = 1;
  std::deque<int> queue;
  for (int w : adj[branch]) {
    tree.add_edge(branch, w);
    in_tree[w] = 1;
    queue.push_back(w);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (!in_tree[w]) {
        tree.add_edge(v, w);
        in_tree[w] = 1;
        queue.push_back(w);
      }
  }
  return tree;
}

namespace detail {

// Farthest vertex from src in a tree; ties broken by smallest index.
inline int farthest_vertex(const Graph& tree, int src) {
  auto dist = bfs_distances(tree, src);
  int best = src;
  for (int v = 0; v < tree.n(); ++v)
    if (dist[v] > dist[best]) best = v;
  return best;
}

}  // namespace detail

/// Longest path of a tree via double breadth-first search, returned as a
/// vertex sequence.  Length is counted in vertices.
inline std::vector<int> longest_path(const Graph& t) {
  require(t.connected(), ErrorCode::NotATree, "input is not connected");
  require(t.edge_count() == t.n() - 1, ErrorCode::NotATree,
          "input has a cycle");
  if (t.n() == 1) return {0};
  int a = detail::farthest_vertex(t, 0);
  int b = detail::farthest_vertex(t, a);
  std::vector<int> path = tree_path(t, std::min(a, b), std::max(a, b));
  return path;
}

inline std::vector<int> tree_leaves(const Graph& t) {
  auto deg = t.degrees();
  std::vector<int> leaves;
  for (int v = 0; v < t.n(); ++v)
    if (deg[v] == 1) leaves.push_back(v);
  return leaves;
}

inline std::vector<int> branch_points(const Graph& t) {
  auto deg = t.degrees();
  std::vector<int> out;
  for (int v = 0; v < t.n(); ++v)
    if (deg[v] >= 3) out.push_back(v);
  return out;
}

struct TreeAnalysis {
  Graph tree;
  std::vector<int> longestPath;  // p = longestPath.size(), in vertices
  std::vector<int> leaves;       // l = leaves.size()
  std::vector<int> branchPoints;

  int p() const { return static_cast<int>(longestPath.size()); }
  int l() const { return static_cast<int>(leaves.size()); }
};

inline TreeAnalysis analyze_tree(const Graph& t) {
  TreeAnalysis a;
  a.tree = t;
  a.longestPath = longest_path(t);
  a.leaves = tree_leaves(t);
  a.branchPoints = branch_points(t);
  return a;
}

/// One strip of the peeling procedure: the vertices removed together.
using StripDecomposition = std::vector<std::vector<int>>;

/// Peels leaf strips off a non-path tree: repeatedly delete the vertices
/// from the smallest-index leaf up to (excluding) the nearest branching
/// point, until a path remains, then delete that path.  The strips
/// partition the vertex set and certify n <= (l-2)(p-1) + p.
inline StripDecomposition strip_decomposition(const Graph& t) {
  require(t.connected() && t.edge_count() == t.n() - 1, ErrorCode::NotATree,
          "strip decomposition requires a tree");
  TreeAnalysis a = analyze_tree(t);
  require(!a.branchPoints.empty(), ErrorCode::IsAPath,
          "strip decomposition degenerates on a path");
  const int p = a.p();
  const int l = a.l();

  // Work on a mutable adjacency copy; alive[] marks remaining vertices.
  auto adj = t.adjacency();
  std::vector<char> alive(t.n(), 1);
  std::vector<int> deg = t.degrees();
  auto remove_vertex = [&](int v) {
    alive[v] = 0;
    for (int w : adj[v])
      if (alive[w]) --deg[w];
    deg[v] = 0;
  };

  StripDecomposition strips;
  int remaining = t.n();
  while (true) {
    // A tree is a path exactly when it has no vertex of degree >= 3.
    bool has_branch = false;
    for (int v = 0; v < t.n(); ++v)
      if (alive[v] && deg[v] >= 3) {
        has_branch = true;
        break;
      }
    if (!has_branch) break;

    int leaf = -1;
    for (int v = 0; v < t.n(); ++v)
      if (alive[v] && deg[v] == 1) {
        leaf = v;
        break;
      }
    require(leaf >= 0, ErrorCode::NotATree, "no leaf in nonempty tree");

    // Walk from the leaf to the nearest branching point, exclusive.
    std::vector<int> strip;
    int prev = -1, cur = leaf;
    while (deg[cur] < 3 || cur == leaf) {
      if (deg[cur] >= 3) break;
      strip.push_back(cur);
      int next = -1;
      for (int w : adj[cur])
        if (alive[w] && w != prev) {
          next = w;
          break;
        }
      if (next < 0) break;  // consumed the whole tree (cannot happen here)
      prev = cur;
      cur = next;
    }
    require(static_cast<int>(strip.size()) <= p - 1, ErrorCode::NotATree,
            "leaf strip longer than p-1, longest path was not maximal");
    for (int v : strip) remove_vertex(v);
    remaining -= static_cast<int>(strip.size());
    strips.push_back(std::move(strip));
  }

  // The remainder is a path; it forms the final strip, in path order.
  std::vector<int> final_strip;
  {
    int end = -1;
    for (int v = 0; v < t.n(); ++v)
      if (alive[v] && deg[v] <= 1) {
        end = v;
        break;
      }
    int prev = -1, cur = end;
    while (cur >= 0) {
      final_strip.push_back(cur);
      int next = -1;
      for (int w : adj[cur])
        if (alive[w] && w != prev) {
          next = w;
          break;
        }
      prev = cur;
      cur = next;
    }
  }
  require(static_cast<int>(final_strip.size()) == remaining,
          ErrorCode::NotATree, "final strip does not cover the remainder");
  require(static_cast<int>(final_strip.size()) <= p, ErrorCode::NotATree,
          "final path longer than the longest path");
  strips.push_back(std::move(final_strip));

  // The certificate the peeling proves.
  require(static_cast<int>(strips.size()) == l - 1, ErrorCode::NotATree,
          "expected l-2 leaf strips plus the final path");
  require(t.n() <= (l - 2) * (p - 1) + p, ErrorCode::NotATree,
          "strip bound n <= (l-2)(p-1)+p violated");
  return strips;
}

}  // namespace matchgraph
