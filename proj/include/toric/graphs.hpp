#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

struct EdgeLabeledConfiguration {
  Configuration cfg;
  std::vector<std::string> vertex_labels;
  std::vector<std::pair<int, int>> edges;  // column order
  std::vector<std::string> edge_labels;
};

// Vertices a, b, c, ...; edges (u,v) with u <= v in lexicographic order, loops only if requested.
// A loop contributes 2 to its vertex row.
EdgeLabeledConfiguration complete_graph_config(int n, bool loops);

// Rows r1..rI then c1..cJ; columns are cells (i,j) in row-major order.
EdgeLabeledConfiguration complete_bipartite_config(int rows, int cols);

Configuration all_ones_row(int n);

struct PatternTable {
  std::vector<std::string> names;  // A, B(a), B(b), B(c), C(a), ..., D(c)
  std::vector<IntVector> moves;    // over edge order aa, ab, ac, bb, bc, cc

  const IntVector& operator[](const std::string& name) const;
};

// The ten Graver elements of the triangle with loops, grouped by shape.
PatternTable loop_triangle_patterns();

}  // namespace toric
