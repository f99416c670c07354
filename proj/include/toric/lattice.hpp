#pragma once

#include <vector>

#include "toric/integer.hpp"

namespace toric {

// Integer matrix A together with an exact rational grading v satisfying vA = (1,...,1).
class Configuration {
public:
  Configuration() = default;
  // Validates vA = 1 exactly; throws NotAConfiguration otherwise.
  Configuration(IntMatrix matrix, Vec<Rational> grading);

  const IntMatrix& matrix() const { return matrix_; }
  const Vec<Rational>& grading() const { return grading_; }
  Index rows() const { return matrix_.rows(); }
  Index cols() const { return matrix_.cols(); }

  // v.b as an exact rational.
  Rational degree_of(const IntVector& b) const;

private:
  IntMatrix matrix_;
  Vec<Rational> grading_;
};

// Minimal-norm rational grading; NotAConfiguration if vA = 1 has no solution.
Configuration validate_configuration(const IntMatrix& matrix);

// Rank over the rationals.
Index rational_rank(const IntMatrix& matrix);

// Lattice basis of the integer kernel, deterministic, each vector sign-canonical.
std::vector<IntVector> kernel_lattice_basis(const IntMatrix& matrix);
inline std::vector<IntVector> kernel_lattice_basis(const Configuration& cfg) {
  return kernel_lattice_basis(cfg.matrix());
}

template <class U, class V>
bool conformal_leq(const Eigen::MatrixBase<U>& u, const Eigen::MatrixBase<V>& v) {
  if (u.size() != v.size()) throw PreconditionViolated("conformal_leq: length mismatch");
  for (Index i = 0; i < u.size(); ++i) {
    const auto a = u(i);
    const auto b = v(i);
    if (a == 0) continue;
    if ((a > 0) != (b > 0) || b == 0) return false;
    if ((a > 0 ? a : -a) > (b > 0 ? b : -b)) return false;
  }
  return true;
}

template <class V>
IntVector positive_part(const Eigen::MatrixBase<V>& z) {
  return z.derived().cwiseMax(Int(0));
}
template <class V>
IntVector negative_part(const Eigen::MatrixBase<V>& z) {
  return (-z.derived()).cwiseMax(Int(0));
}
// |z+|_1
template <class V>
Int degree(const Eigen::MatrixBase<V>& z) {
  Int s = 0;
  for (Index i = 0; i < z.size(); ++i)
    if (z(i) > 0) s = checked_add(s, Int(z(i)));
  return s;
}
template <class V>
Int one_norm(const Eigen::MatrixBase<V>& z) {
  Int s = 0;
  for (Index i = 0; i < z.size(); ++i) s = checked_add(s, abs_value(Int(z(i))));
  return s;
}

// First nonzero entry positive.
bool is_sign_canonical(const IntVector& z);
IntVector canonical_sign(const IntVector& z);

bool in_kernel(const IntMatrix& matrix, const IntVector& z);

// Canonical representatives of a symmetric move set; the negations are implicit.
struct MoveSet {
  std::vector<IntVector> moves;
  std::size_t size() const { return moves.size(); }
  std::size_t signed_count() const { return 2 * moves.size(); }
  bool contains(const IntVector& z) const;
  Int max_degree() const;
  Int max_one_norm() const;
};

// Canonical signs, duplicates removed, sorted degree-ascending then lexicographic.
MoveSet make_move_set(std::vector<IntVector> moves);

// (dN+n) x (nN): N diagonal copies of A above n rows of repeated identities.
Configuration lawrence_lift(const Configuration& cfg, int copies);

struct LiftedMove {
  Index base_cols = 0;
  std::vector<IntVector> slices;

  IntVector sum() const;
  IntVector flatten() const;
  static LiftedMove from_flat(const IntVector& flat, Index base_cols);
};

std::size_t lifted_type(const LiftedMove& m);

}  // namespace toric
