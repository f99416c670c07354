#include "toric/graphs.hpp"

#include <algorithm>

namespace toric {

namespace {

std::string vertex_name(int v) {
  if (v < 26) return std::string(1, static_cast<char>('a' + v));
  return "v" + std::to_string(v + 1);
}

Vec<Rational> constant_grading(Index d, Rational value) { return Vec<Rational>::Constant(d, value); }

}  // namespace

EdgeLabeledConfiguration complete_graph_config(int n, bool loops) {
  if (n < 2) throw PreconditionViolated("complete graph needs at least two vertices");
  EdgeLabeledConfiguration out;
  for (int v = 0; v < n; ++v) out.vertex_labels.push_back(vertex_name(v));
  for (int u = 0; u < n; ++u)
    for (int v = loops ? u : u + 1; v < n; ++v) {
      out.edges.emplace_back(u, v);
      out.edge_labels.push_back(out.vertex_labels[u] + out.vertex_labels[v]);
    }
  IntMatrix m = IntMatrix::Zero(n, static_cast<Index>(out.edges.size()));
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    auto [u, v] = out.edges[e];
    m(u, static_cast<Index>(e)) += 1;
    m(v, static_cast<Index>(e)) += 1;
  }
  out.cfg = Configuration(std::move(m), constant_grading(n, Rational(1, 2)));
  return out;
}

EdgeLabeledConfiguration complete_bipartite_config(int rows, int cols) {
  if (rows < 1 || cols < 1) throw PreconditionViolated("bipartite sides must be nonempty");
  EdgeLabeledConfiguration out;
  for (int i = 0; i < rows; ++i) out.vertex_labels.push_back("r" + std::to_string(i + 1));
  for (int j = 0; j < cols; ++j) out.vertex_labels.push_back("c" + std::to_string(j + 1));
  IntMatrix m = IntMatrix::Zero(rows + cols, rows * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Index e = i * cols + j;
      m(i, e) = 1;
      m(rows + j, e) = 1;
      out.edges.emplace_back(i, rows + j);
      out.edge_labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  out.cfg = Configuration(std::move(m), constant_grading(rows + cols, Rational(1, 2)));
  return out;
}

Configuration all_ones_row(int n) {
  if (n < 1) throw PreconditionViolated("all-ones row needs n >= 1");
  return Configuration(IntMatrix::Ones(1, n), constant_grading(1, Rational(1)));
}

const IntVector& PatternTable::operator[](const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw PreconditionViolated("unknown pattern " + name);
  return moves[static_cast<std::size_t>(it - names.begin())];
}

PatternTable loop_triangle_patterns() {
  PatternTable t;
  auto add = [&](const char* name, std::vector<Int> v) {
    t.names.emplace_back(name);
    t.moves.push_back(to_vector(v));
  };
  add("A", {1, -1, -1, 1, -1, 1});
  add("B(a)", {1, -1, -1, 0, 1, 0});
  add("B(b)", {0, -1, 1, 1, -1, 0});
  add("B(c)", {0, 1, -1, 0, -1, 1});
  add("C(a)", {0, 0, 0, 1, -2, 1});
  add("C(b)", {1, 0, -2, 0, 0, 1});
  add("C(c)", {1, -2, 0, 1, 0, 0});
  add("D(a)", {0, 2, -2, -1, 0, 1});
  add("D(b)", {1, -2, 0, 0, 2, -1});
  add("D(c)", {-1, 0, 2, 1, -2, 0});
  return t;
}

}  // namespace toric
