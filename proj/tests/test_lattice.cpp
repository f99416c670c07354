#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toric/graphs.hpp"
#include "toric/lattice.hpp"

using namespace toric;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<Int>> rows) {
  IntMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (Int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntVector vec(std::initializer_list<Int> v) { return to_vector(std::vector<Int>(v)); }

void expect_grading_exact(const Configuration& cfg) {
  for (Index c = 0; c < cfg.cols(); ++c) {
    Rational s = 0;
    for (Index r = 0; r < cfg.rows(); ++r) s += cfg.grading()(r) * Rational(cfg.matrix()(r, c));
    EXPECT_EQ(s, Rational(1)) << "column " << c;
  }
}

IntMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, Int lo, Int hi) {
  std::uniform_int_distribution<Int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Rational, ArithmeticIsExactAndNormalized) {
  Rational a(Wide(1), Wide(2)), b(Wide(1), Wide(3));
  EXPECT_EQ(a + b, Rational(Wide(5), Wide(6)));
  EXPECT_EQ(a - b, Rational(Wide(1), Wide(6)));
  EXPECT_EQ(a * b, Rational(Wide(1), Wide(6)));
  EXPECT_EQ(a / b, Rational(Wide(3), Wide(2)));
  EXPECT_EQ(Rational(Wide(4), Wide(-8)), Rational(Wide(-1), Wide(2)));
  EXPECT_EQ(Rational(Wide(4), Wide(-8)).str(), "-1/2");
  EXPECT_LT(b, a);
}

TEST(CheckedArithmetic, OverflowIsReported) {
  EXPECT_THROW(checked_mul<Int>(INT64_MAX, 2), OverflowDetected);
  EXPECT_THROW(checked_add<Int>(INT64_MAX, 1), OverflowDetected);
  EXPECT_THROW(narrow(Wide(INT64_MAX) + 1), OverflowDetected);
  EXPECT_EQ(checked_mul<Int>(3, -4), -12);
}

TEST(Configuration, GradingSolvesExactly) {
  expect_grading_exact(validate_configuration(mat({{1, 1, 1, 0, 0, 0}, {1, 0, 0, 1, 1, 0},
                                                   {0, 1, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1}})));
  expect_grading_exact(validate_configuration(mat({{2, 1, 1, 0, 0, 0}, {0, 1, 0, 2, 1, 0},
                                                   {0, 0, 1, 0, 1, 2}})));
  expect_grading_exact(validate_configuration(mat({{1, 1, 1, 1}, {0, 1, 2, 3}})));
  expect_grading_exact(validate_configuration(mat({{3, 0}, {0, 5}})));
}

TEST(Configuration, RejectsMatricesWithoutCommonHyperplane) {
  EXPECT_THROW(validate_configuration(mat({{1, 2}})), NotAConfiguration);
  EXPECT_THROW(validate_configuration(mat({{1, 0, 1}, {0, 1, 1}})), NotAConfiguration);
  EXPECT_THROW(validate_configuration(mat({{0, 1}})), NotAConfiguration);
}

TEST(Configuration, ConstructorChecksTheGivenGrading) {
  IntMatrix a = mat({{1, 1, 1}});
  Vec<Rational> good(1), bad(1);
  good(0) = 1;
  bad(0) = Rational(Wide(1), Wide(2));
  EXPECT_NO_THROW(Configuration(a, good));
  EXPECT_THROW(Configuration(a, bad), NotAConfiguration);
}

TEST(Configuration, DegreeOfRightHandSide) {
  auto cfg = complete_graph_config(3, true).cfg;
  EXPECT_EQ(cfg.degree_of(vec({2, 2, 2})), Rational(3));
  EXPECT_EQ(cfg.degree_of(vec({1, 0, 0})), Rational(Wide(1), Wide(2)));
}

TEST(Rank, MatchesIndependentElimination) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 1 + t % 4, 1 + t % 6, -3, 3);
    if (t % 5 == 0 && m.rows() > 1) m.row(m.rows() - 1) = m.row(0) * 2 - m.row(m.rows() - 2);
    EXPECT_EQ(rational_rank(m), oracle::rank(m)) << m;
  }
}

TEST(KernelBasis, IsASaturatedBasisOfTheKernel) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    const Index rows = 1 + t % 3, cols = 2 + t % 5;
    IntMatrix m = random_matrix(rng, rows, cols, -4, 4);
    auto basis = kernel_lattice_basis(m);
    ASSERT_EQ(static_cast<Index>(basis.size()), cols - oracle::rank(m)) << m;
    for (const auto& z : basis) {
      EXPECT_TRUE(oracle::is_zero_product(m, z));
      EXPECT_TRUE(is_sign_canonical(z));
    }
    if (!basis.empty()) EXPECT_EQ(oracle::maximal_minor_gcd(basis), 1) << m;
  }
}

TEST(KernelBasis, IsDeterministic) {
  IntMatrix m = mat({{2, 1, 1, 0, 0, 0}, {0, 1, 0, 2, 1, 0}, {0, 0, 1, 0, 1, 2}});
  auto a = kernel_lattice_basis(m), b = kernel_lattice_basis(m);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(ConformalOrder, MatchesDefinitionOnABox) {
  oracle::for_each_box_point(3, -2, 2, [](const IntVector& u) {
    oracle::for_each_box_point(3, -1, 1, [&](const IntVector& v) {
      EXPECT_EQ(conformal_leq(u, v), oracle::conformal_below(u, v));
    });
  });
}

TEST(ConformalOrder, PartsAndDegree) {
  IntVector z = vec({2, -1, 0, -1});
  EXPECT_EQ(positive_part(z), vec({2, 0, 0, 0}));
  EXPECT_EQ(negative_part(z), vec({0, 1, 0, 1}));
  EXPECT_EQ(degree(z), 2);
  EXPECT_EQ(one_norm(z), 4);
  EXPECT_EQ(canonical_sign(vec({0, -1, 1})), vec({0, 1, -1}));
}

TEST(MoveSet, CanonicalDeduplicatedAndOrdered) {
  auto ms = make_move_set({vec({0, -1, 1}), vec({0, 1, -1}), vec({2, -1, -1}), vec({0, 0, 0}), vec({1, -1, 0})});
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms.signed_count(), 6u);
  EXPECT_EQ(ms.moves[0], vec({0, 1, -1}));
  EXPECT_EQ(ms.moves[1], vec({1, -1, 0}));
  EXPECT_EQ(ms.moves[2], vec({2, -1, -1}));
  EXPECT_TRUE(ms.contains(vec({-2, 1, 1})));
  EXPECT_EQ(ms.max_degree(), 2);
  EXPECT_EQ(ms.max_one_norm(), 4);
}

TEST(LawrenceLift, ShapeAndBlocks) {
  auto cfg = complete_graph_config(3, true).cfg;
  auto lift = lawrence_lift(cfg, 3);
  ASSERT_EQ(lift.rows(), 3 * 3 + 6);
  ASSERT_EQ(lift.cols(), 6 * 3);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(lift.matrix().block(3 * k, 6 * k, 3, 6), cfg.matrix());
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(lift.matrix().block(9, 6 * k, 6, 6).isIdentity());
  expect_grading_exact(lift);
}

TEST(LawrenceLift, KernelIsSlicesSummingToZero) {
  auto cfg = all_ones_row(3);
  auto lift = lawrence_lift(cfg, 2);
  oracle::for_each_box_point(6, -1, 1, [&](const IntVector& x) {
    const IntVector a = x.head(3), b = x.tail(3);
    const bool expected = a.sum() == 0 && b.sum() == 0 && a + b == IntVector::Zero(3);
    EXPECT_EQ(in_kernel(lift.matrix(), x), expected) << x.transpose();
  });
}

TEST(LiftedMove, FlattenRoundTripAndType) {
  LiftedMove m;
  m.base_cols = 3;
  m.slices = {vec({1, -1, 0}), vec({0, 0, 0}), vec({-1, 1, 0})};
  EXPECT_EQ(lifted_type(m), 2u);
  EXPECT_TRUE(m.sum().isZero());
  auto back = LiftedMove::from_flat(m.flatten(), 3);
  ASSERT_EQ(back.slices.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(back.slices[k], m.slices[k]);
}
