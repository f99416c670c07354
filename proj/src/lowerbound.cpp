#include "toric/lowerbound.hpp"

#include "toric/graphs.hpp"

namespace toric {

IntMatrix basic_bipartite_slice(int rows, int cols, int i1, int i2, int j1, int j2) {
  if (i1 == i2 || j1 == j2 || i1 < 1 || i2 < 1 || j1 < 1 || j2 < 1 || i1 > rows || i2 > rows || j1 > cols ||
      j2 > cols)
    throw PreconditionViolated("basic slice indices out of range or repeated");
  IntMatrix t = IntMatrix::Zero(rows, cols);
  t(i1 - 1, j1 - 1) = 1;
  t(i2 - 1, j2 - 1) = 1;
  t(i1 - 1, j2 - 1) = -1;
  t(i2 - 1, j1 - 1) = -1;
  return t;
}

IntVector flatten_table(const IntMatrix& t) {
  IntVector v(t.size());
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j) v(i * t.cols() + j) = t(i, j);
  return v;
}

IntMatrix unflatten_table(const IntVector& v, int rows, int cols) {
  if (v.size() != Index(rows) * cols) throw PreconditionViolated("vector length is not I*J");
  IntMatrix t(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(i, j) = v(Index(i) * cols + j);
  return t;
}

ZStarCounts zstar_counts(int rows, int cols) {
  ZStarCounts c;
  const int d = cols / 2;
  const bool odd = cols % 2 == 1;
  c.half = d;
  c.listed = static_cast<std::size_t>(2 * d + (odd ? 1 : 0) + (rows - 2) * (d * d + (odd ? d : 0)));
  c.formula = static_cast<std::size_t>((rows - 2) * (cols - d) * d + 2 * d);
  c.bound = Rational(Wide(rows - 2) * (Wide(cols) * cols - 1), 4) + Rational(cols - 1);
  return c;
}

LiftedMove build_zstar(int rows, int cols) {
  if (rows < 3 || cols < rows) throw PreconditionViolated("build_zstar needs 3 <= I <= J");
  const int I = rows, J = cols, d = J / 2, r = d + 1;
  const bool odd = J % 2 == 1;
  LiftedMove m;
  m.base_cols = Index(I) * J;
  auto add = [&](int i1, int i2, int j1, int j2, int times) {
    for (int t = 0; t < times; ++t) m.slices.push_back(flatten_table(basic_bipartite_slice(I, J, i1, i2, j1, j2)));
  };
  for (int j = 1; j <= d; ++j) add(1, I, j, J - d + j, 1);
  for (int j = 1; j <= d - 1; ++j) add(I - 1, I, J - d + j + 1, j, 1);
  add(I - 1, I, d + 1, d, 1);
  if (odd) add(I - 1, I, r + 1, r, 1);
  for (int i = 1; i <= I - 2; ++i)
    for (int j = 1; j <= d; ++j) add(i, i + 1, j + 1, j, j);
  if (odd)
    for (int i = 1; i <= I - 2; ++i) add(i, i + 1, r + 1, r, d);
  for (int i = 1; i <= I - 2; ++i)
    for (int j = 1; j <= d - 1; ++j) add(i, i + 1, J - j + 1, J - j, j);

  if (!m.sum().isZero()) throw ConstructionInconsistent("z* slices do not sum to zero");
  if (m.slices.size() != zstar_counts(I, J).listed) throw ConstructionInconsistent("z* slice count mismatch");
  return m;
}

ZStarReport certify_zstar(int rows, int cols, CertifyMode mode) {
  ZStarReport rep;
  rep.rows = rows;
  rep.cols = cols;
  rep.counts = zstar_counts(rows, cols);
  const LiftedMove m = build_zstar(rows, cols);
  rep.type = lifted_type(m);
  const Configuration cfg = complete_bipartite_config(rows, cols).cfg;
  // certify_indispensable_lift rejects non-indispensable slices, so reaching the certificate proves it.
  rep.certificate = certify_indispensable_lift(cfg, m, mode);
  rep.slices_indispensable = true;
  rep.meets_bound = Rational(static_cast<Int>(rep.type)) >= rep.counts.bound;
  return rep;
}

LiftedMove remark_move_5x5() {
  struct Entry {
    int sign, i1, i2, j1, j2, times;
  };
  const Entry entries[] = {
      {+1, 1, 5, 1, 5, 1}, {-1, 1, 2, 1, 2, 1}, {-1, 1, 3, 2, 3, 1}, {-1, 1, 2, 3, 4, 1}, {-1, 1, 3, 4, 5, 1},
      {-1, 2, 3, 1, 3, 1}, {+1, 2, 4, 2, 4, 1}, {-1, 2, 4, 3, 5, 2}, {+1, 2, 5, 4, 5, 2}, {-1, 3, 4, 1, 2, 1},
      {-1, 3, 5, 2, 4, 2}, {+1, 3, 5, 3, 5, 2}, {-1, 3, 4, 4, 5, 3}, {-1, 4, 5, 1, 3, 1}, {+1, 4, 5, 2, 5, 2},
      {-1, 4, 5, 3, 4, 3}, {-1, 4, 5, 4, 5, 7},
  };
  LiftedMove m;
  m.base_cols = 25;
  for (const auto& e : entries)
    for (int t = 0; t < e.times; ++t)
      m.slices.push_back(Int(e.sign) * flatten_table(basic_bipartite_slice(5, 5, e.i1, e.i2, e.j1, e.j2)));
  if (m.slices.size() != 32) throw ConstructionInconsistent("5x5 move must have 32 slices");
  if (!m.sum().isZero()) throw ConstructionInconsistent("5x5 move slices do not sum to zero");
  return m;
}

}  // namespace toric
