#pragma once

#include "toric/markov.hpp"

namespace toric {

// I x J table with +1 at (i1,j1),(i2,j2) and -1 at (i1,j2),(i2,j1); indices are 1-based.
IntMatrix basic_bipartite_slice(int rows, int cols, int i1, int i2, int j1, int j2);

// Flattened row-major, matching the cell order of complete_bipartite_config.
IntVector flatten_table(const IntMatrix& t);
IntMatrix unflatten_table(const IntVector& v, int rows, int cols);

struct ZStarCounts {
  int half = 0;             // floor(J/2)
  std::size_t listed = 0;   // slices produced by the construction
  std::size_t formula = 0;  // (I-2)(J-d)d + 2d
  Rational bound;           // (I-2)(J^2-1)/4 + J - 1
};

ZStarCounts zstar_counts(int rows, int cols);

// Indispensable lifted move for the Lawrence liftings of A(I,J), 3 <= I <= J.
LiftedMove build_zstar(int rows, int cols);

struct ZStarReport {
  int rows = 0;
  int cols = 0;
  ZStarCounts counts;
  std::size_t type = 0;
  bool slices_indispensable = false;
  IndispensabilityCertificate certificate;
  bool meets_bound = false;  // type >= bound
};

ZStarReport certify_zstar(int rows, int cols, CertifyMode mode = CertifyMode::automatic);

// The 32-slice move on 5 x 5 tables that exceeds the general bound.
LiftedMove remark_move_5x5();

}  // namespace toric
