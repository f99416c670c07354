#include "toric/lattice.hpp"

#include <algorithm>

namespace toric {

namespace {

// Incremental row echelon over Q; returns indices of vectors that were independent of earlier ones.
class EchelonBuilder {
public:
  explicit EchelonBuilder(Index width) : width_(width) {}

  bool add(std::vector<Rational> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Index p = pivots_[k];
      if (row[p].is_zero()) continue;
      const Rational f = row[p] / rows_[k][p];
      for (Index c = p; c < width_; ++c) {
        if (!rows_[k][c].is_zero()) row[c] -= f * rows_[k][c];
      }
    }
    for (Index c = 0; c < width_; ++c) {
      if (!row[c].is_zero()) {
        rows_.push_back(std::move(row));
        pivots_.push_back(c);
        return true;
      }
    }
    return false;
  }
  std::size_t rank() const { return rows_.size(); }

private:
  Index width_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Index> pivots_;
};

// Solves a nonsingular square rational system by Gauss-Jordan with first-nonzero pivoting.
Vec<Rational> solve_square(Mat<Rational> m, Vec<Rational> rhs) {
  const Index n = m.rows();
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) throw InternalInvariantViolation("singular Gram system");
    if (p != c) {
      m.row(p).swap(m.row(c));
      std::swap(rhs(p), rhs(c));
    }
    const Rational inv = Rational(1) / m(c, c);
    for (Index k = c; k < n; ++k) m(c, k) *= inv;
    rhs(c) *= inv;
    for (Index r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      const Rational f = m(r, c);
      for (Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      rhs(r) -= f * rhs(c);
    }
  }
  return rhs;
}

void reduce_basis(std::vector<IntVector>& basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Int ni = one_norm(basis[i]);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          IntVector cand = basis[i] + Int(s) * basis[j];
          Int nc = one_norm(cand);
          if (nc < ni) {
            basis[i] = std::move(cand);
            ni = nc;
            changed = true;
          }
        }
      }
    }
  }
}

}  // namespace

Configuration::Configuration(IntMatrix matrix, Vec<Rational> grading)
    : matrix_(std::move(matrix)), grading_(std::move(grading)) {
  if (grading_.size() != matrix_.rows())
    throw NotAConfiguration("grading length does not match the row count");
  if (matrix_.cols() == 0) throw NotAConfiguration("matrix has no columns");
  for (Index c = 0; c < matrix_.cols(); ++c) {
    Rational s(0);
    for (Index r = 0; r < matrix_.rows(); ++r)
      if (matrix_(r, c) != 0) s += grading_(r) * Rational(matrix_(r, c));
    if (!(s == Rational(1)))
      throw NotAConfiguration("grading does not give value 1 on column " + std::to_string(c));
  }
}

Rational Configuration::degree_of(const IntVector& b) const {
  if (b.size() != rows()) throw PreconditionViolated("degree vector has wrong length");
  Rational s(0);
  for (Index r = 0; r < b.size(); ++r)
    if (b(r) != 0) s += grading_(r) * Rational(b(r));
  return s;
}

Configuration validate_configuration(const IntMatrix& matrix) {
  if (matrix.rows() == 0 || matrix.cols() == 0) throw NotAConfiguration("empty matrix");
  const Index d = matrix.rows();
  EchelonBuilder echelon(d);
  std::vector<Index> independent;
  for (Index c = 0; c < matrix.cols(); ++c) {
    std::vector<Rational> col(static_cast<std::size_t>(d));
    for (Index r = 0; r < d; ++r) col[r] = Rational(matrix(r, c));
    if (echelon.add(std::move(col))) independent.push_back(c);
  }
  if (independent.empty()) throw NotAConfiguration("matrix is zero");
  const Index r = static_cast<Index>(independent.size());
  // Minimal-norm v lies in the span of the independent columns: v = C w with (C^T C) w = 1.
  Mat<Rational> chosen(d, r);
  for (Index k = 0; k < r; ++k)
    for (Index row = 0; row < d; ++row) chosen(row, k) = Rational(matrix(row, independent[k]));
  Mat<Rational> gram(r, r);
  for (Index a = 0; a < r; ++a)
    for (Index b = 0; b < r; ++b) {
      Rational s(0);
      for (Index row = 0; row < d; ++row) s += chosen(row, a) * chosen(row, b);
      gram(a, b) = s;
    }
  Vec<Rational> ones = Vec<Rational>::Constant(r, Rational(1));
  Vec<Rational> w = solve_square(gram, ones);
  Vec<Rational> v(d);
  for (Index row = 0; row < d; ++row) {
    Rational s(0);
    for (Index k = 0; k < r; ++k) s += chosen(row, k) * w(k);
    v(row) = s;
  }
  try {
    return Configuration(matrix, v);
  } catch (const NotAConfiguration&) {
    throw NotAConfiguration("no rational v with vA = (1,...,1)");
  }
}

Index rational_rank(const IntMatrix& matrix) {
  EchelonBuilder echelon(matrix.cols());
  for (Index r = 0; r < matrix.rows(); ++r) {
    std::vector<Rational> row(static_cast<std::size_t>(matrix.cols()));
    for (Index c = 0; c < matrix.cols(); ++c) row[c] = Rational(matrix(r, c));
    echelon.add(std::move(row));
  }
  return static_cast<Index>(echelon.rank());
}

std::vector<IntVector> kernel_lattice_basis(const IntMatrix& matrix) {
  const Index d = matrix.rows();
  const Index n = matrix.cols();
  Mat<Wide> m = matrix.cast<Wide>();
  Mat<Wide> u = Mat<Wide>::Identity(n, n);
  auto col_axpy = [&](Index dst, Index src, Wide q) {
    for (Index r = 0; r < d; ++r) m(r, dst) = checked_sub(m(r, dst), checked_mul(q, m(r, src)));
    for (Index r = 0; r < n; ++r) u(r, dst) = checked_sub(u(r, dst), checked_mul(q, u(r, src)));
  };
  Index pivot = 0;
  for (Index r = 0; r < d && pivot < n; ++r) {
    for (;;) {
      Index best = -1;
      for (Index c = pivot; c < n; ++c) {
        if (m(r, c) == 0) continue;
        if (best < 0 || abs_value(m(r, c)) < abs_value(m(r, best))) best = c;
      }
      if (best < 0) break;
      if (best != pivot) {
        m.col(best).swap(m.col(pivot));
        u.col(best).swap(u.col(pivot));
      }
      bool clear = true;
      for (Index c = pivot + 1; c < n; ++c) {
        if (m(r, c) == 0) continue;
        col_axpy(c, pivot, m(r, c) / m(r, pivot));
        if (m(r, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (m(r, pivot) != 0) ++pivot;
  }
  std::vector<IntVector> basis;
  for (Index c = pivot; c < n; ++c) {
    IntVector z(n);
    for (Index r = 0; r < n; ++r) z(r) = narrow(u(r, c));
    basis.push_back(std::move(z));
  }
  reduce_basis(basis);
  for (auto& z : basis) z = canonical_sign(z);
  std::sort(basis.begin(), basis.end(), [](const IntVector& a, const IntVector& b) {
    Int na = one_norm(a), nb = one_norm(b);
    if (na != nb) return na < nb;
    return lex_less(b, a);
  });
  return basis;
}

bool is_sign_canonical(const IntVector& z) {
  for (Index i = 0; i < z.size(); ++i)
    if (z(i) != 0) return z(i) > 0;
  return true;
}

IntVector canonical_sign(const IntVector& z) { return is_sign_canonical(z) ? z : IntVector(-z); }

bool in_kernel(const IntMatrix& matrix, const IntVector& z) {
  if (z.size() != matrix.cols()) return false;
  for (Index r = 0; r < matrix.rows(); ++r) {
    Wide s = 0;
    for (Index c = 0; c < matrix.cols(); ++c) s += Wide(matrix(r, c)) * Wide(z(c));
    if (s != 0) return false;
  }
  return true;
}

bool MoveSet::contains(const IntVector& z) const {
  IntVector c = canonical_sign(z);
  return std::any_of(moves.begin(), moves.end(), [&](const IntVector& m) { return m == c; });
}

Int MoveSet::max_degree() const {
  Int best = 0;
  for (const auto& m : moves) best = std::max(best, degree(m));
  return best;
}

Int MoveSet::max_one_norm() const {
  Int best = 0;
  for (const auto& m : moves) best = std::max(best, one_norm(m));
  return best;
}

MoveSet make_move_set(std::vector<IntVector> moves) {
  for (auto& m : moves) m = canonical_sign(m);
  std::sort(moves.begin(), moves.end(), [](const IntVector& a, const IntVector& b) {
    Int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return lex_less(a, b);
  });
  moves.erase(std::unique(moves.begin(), moves.end(),
                          [](const IntVector& a, const IntVector& b) { return a == b; }),
              moves.end());
  std::erase_if(moves, [](const IntVector& m) { return m.isZero(); });
  return MoveSet{std::move(moves)};
}

Configuration lawrence_lift(const Configuration& cfg, int copies) {
  if (copies < 1) throw PreconditionViolated("lawrence_lift needs at least one copy");
  const Index d = cfg.rows();
  const Index n = cfg.cols();
  const Index N = copies;
  IntMatrix lifted = IntMatrix::Zero(d * N + n, n * N);
  for (Index k = 0; k < N; ++k) {
    lifted.block(k * d, k * n, d, n) = cfg.matrix();
    lifted.block(d * N, k * n, n, n) = IntMatrix::Identity(n, n);
  }
  // v on each diagonal copy, zero on the identity rows: every lifted column still has value 1.
  Vec<Rational> grading(d * N + n);
  for (Index k = 0; k < N; ++k) grading.segment(k * d, d) = cfg.grading();
  for (Index r = d * N; r < d * N + n; ++r) grading(r) = Rational(0);
  return Configuration(std::move(lifted), std::move(grading));
}

IntVector LiftedMove::sum() const {
  IntVector s = IntVector::Zero(base_cols);
  for (const auto& z : slices) s += z;
  return s;
}

IntVector LiftedMove::flatten() const {
  IntVector flat(base_cols * static_cast<Index>(slices.size()));
  for (std::size_t k = 0; k < slices.size(); ++k)
    flat.segment(static_cast<Index>(k) * base_cols, base_cols) = slices[k];
  return flat;
}

LiftedMove LiftedMove::from_flat(const IntVector& flat, Index base_cols) {
  if (base_cols <= 0 || flat.size() % base_cols != 0)
    throw PreconditionViolated("flat vector length is not a multiple of the slice width");
  LiftedMove m;
  m.base_cols = base_cols;
  for (Index k = 0; k < flat.size() / base_cols; ++k)
    m.slices.push_back(flat.segment(k * base_cols, base_cols));
  return m;
}

std::size_t lifted_type(const LiftedMove& m) {
  return static_cast<std::size_t>(
      std::count_if(m.slices.begin(), m.slices.end(), [](const IntVector& z) { return !z.isZero(); }));
}

}  // namespace toric
