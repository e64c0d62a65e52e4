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

#include <utility>
#include <vector>

#include "matchgraph/common.hpp"
#include "matchgraph/graph.hpp"

namespace matchgraph {

enum class Encoding { EvenParity, OddParity };

enum class Strategy { PathBranch, LeafRouting, XYPathBranch, XYLeafRouting };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::PathBranch: return "path-branch";
    case Strategy::LeafRouting: return "leaf-routing";
    case Strategy::XYPathBranch: return "xy-path-branch";
    case Strategy::XYLeafRouting: return "xy-leaf-routing";
  }
  return "?";
}

/// Assignment of logical qubits to physical vertex pairs plus the ancilla
/// bookkeeping the compiler needs.  Pairs, ancillas and unused vertices
/// partition the vertex set.
struct Layout {
  Graph graph;
  Graph tree;
  Strategy strategy = Strategy::PathBranch;
  Encoding encoding = Encoding::EvenParity;

  // logical index -> ordered (first member, second member) vertices
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> ancillas;  // initialized |0>, actively used
  std::vector<int> unused;    // initialized |0>, never touched

  // P-power mod 4 per logical qubit (XY modes): the compiled circuit
  // realizes (tensor of P^ledger) U (tensor of P^ledger)^dagger.
  std::vector<int> phaseLedger;

  // Path strategies: the longest path in gadget orientation, the branch
  // vertex, its off-path neighbor, and the slot table (index pairs into
  // pathOrder; a slot holds one logical pair).
  std::vector<int> pathOrder;
  int branchVertex = -1;
  int betaVertex = -1;   // off-path neighbor of the branch
  int alphaVertex = -1;  // reserved path vertex next to the branch (matchgate)
  std::vector<std::pair<int, int>> slots;  // positions into pathOrder
  int gadgetSlotI = -1;  // slot index that plays (1,2) of the branch gadget
  int gadgetSlotJ = -1;  // slot index that plays (3,4)
  int alphaGapAfterSlot = -1;  // slot index left of the alpha gap, -1 if none

  // Leaf strategies: 2-coloring of the tree (for XY route parities).
  std::vector<int> color;

  int logical_count() const { return static_cast<int>(pairs.size()); }

  void validate() const {
    std::vector<int> role(graph.n(), 0);
    for (auto& [u, v] : pairs) {
      require(u >= 0 && u < graph.n() && v >= 0 && v < graph.n() && u != v,
              ErrorCode::InvalidLayout, "bad pair");
      require(role[u] == 0 && role[v] == 0, ErrorCode::InvalidLayout,
              "vertex used twice");
      role[u] = role[v] = 1;
    }
    for (int a : ancillas) {
      require(role[a] == 0, ErrorCode::InvalidLayout, "ancilla vertex reused");
      role[a] = 2;
    }
    for (int u : unused) {
      require(role[u] == 0, ErrorCode::InvalidLayout, "unused vertex reused");
      role[u] = 3;
    }
    for (int v = 0; v < graph.n(); ++v)
      require(role[v] != 0, ErrorCode::InvalidLayout,
              "vertex not covered by layout");
  }
};

}  // namespace matchgraph
