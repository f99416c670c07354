#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toric/fiber.hpp"
#include "toric/graphs.hpp"

using namespace toric;

namespace {

IntVector vec(std::initializer_list<Int> v) { return to_vector(std::vector<Int>(v)); }

// Right-hand sides A x over the box [0, max_entry]^n.
std::set<oracle::Key> reachable_rhs(const Configuration& cfg, Int max_entry) {
  std::set<oracle::Key> out;
  oracle::for_each_box_point(cfg.cols(), 0, max_entry, [&](const IntVector& x) {
    out.insert(oracle::key(cfg.matrix() * x));
  });
  return out;
}

void compare_with_naive(const Configuration& cfg, Int max_degree) {
  for (const auto& bk : reachable_rhs(cfg, max_degree)) {
    IntVector b = to_vector(bk);
    const Rational deg = cfg.degree_of(b);
    if (deg > Rational(max_degree)) continue;
    Fiber f = enumerate_fiber(cfg, b);
    auto expected = oracle::naive_fiber(cfg.matrix(), b, max_degree);
    std::set<oracle::Key> got;
    for (const auto& x : f.elements) got.insert(oracle::key(x));
    ASSERT_EQ(got, expected) << "b = " << b.transpose();
    ASSERT_EQ(got.size(), f.size()) << "duplicates for b = " << b.transpose();
    for (std::size_t i = 1; i < f.elements.size(); ++i)
      EXPECT_TRUE(lex_less(f.elements[i], f.elements[i - 1])) << "order for b = " << b.transpose();
    EXPECT_EQ(Rational(f.total_degree), deg);
  }
}

}  // namespace

TEST(FiberEnumeration, MatchesNaiveFilterOnAllOnesRow) {
  for (int n = 1; n <= 5; ++n) compare_with_naive(all_ones_row(n), 6);
}

TEST(FiberEnumeration, MatchesNaiveFilterOnTriangleWithLoops) {
  compare_with_naive(complete_graph_config(3, true).cfg, 4);
}

TEST(FiberEnumeration, MatchesNaiveFilterOnK4) {
  compare_with_naive(complete_graph_config(4, false).cfg, 3);
}

TEST(FiberEnumeration, MatchesNaiveFilterOnSmallBipartite) {
  compare_with_naive(complete_bipartite_config(2, 3).cfg, 3);
}

TEST(FiberEnumeration, MatchesNaiveFilterOnTwistedCubic) {
  IntMatrix a(2, 4);
  a << 1, 1, 1, 1, 0, 1, 2, 3;
  compare_with_naive(validate_configuration(a), 5);
}

TEST(FiberEnumeration, TriangleWithLoopsAtTwoTwoTwo) {
  auto cfg = complete_graph_config(3, true).cfg;
  Fiber f = enumerate_fiber(cfg, vec({2, 2, 2}));
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f.total_degree, 3);
}

TEST(FiberEnumeration, EmptyAndInfeasible) {
  auto cfg = complete_graph_config(3, false).cfg;
  EXPECT_EQ(enumerate_fiber(cfg, vec({1, 0, 0})).size(), 0u);
  EXPECT_EQ(enumerate_fiber(cfg, vec({0, 0, 0})).size(), 1u);
}

TEST(FiberEnumeration, CapIsEnforced) {
  auto cfg = all_ones_row(6);
  EXPECT_THROW(enumerate_fiber(cfg, vec({6}), 100), FiberTooLarge);
  EXPECT_EQ(enumerate_fiber(cfg, vec({6}), 462).size(), 462u);
}

TEST(FiberEnumeration, VisitorStopsEarly) {
  auto cfg = all_ones_row(4);
  int seen = 0;
  bool finished = for_each_fiber_element(cfg, vec({3}), [&](const IntVector&) { return ++seen < 4; });
  EXPECT_FALSE(finished);
  EXPECT_EQ(seen, 4);
}

TEST(FiberConfiguration, ColumnsAreFiberElementsWithUnitGrading) {
  auto cfg = complete_graph_config(3, true).cfg;
  auto fc = fiber_configuration(cfg, vec({2, 2, 2}));
  ASSERT_EQ(fc.columns(), 5);
  EXPECT_EQ(fc.config.rows(), 6);
  for (Index c = 0; c < fc.columns(); ++c) {
    EXPECT_EQ(IntVector(fc.config.matrix().col(c)), fc.elements[static_cast<std::size_t>(c)]);
    EXPECT_EQ(fc.column_of(fc.elements[static_cast<std::size_t>(c)]), c);
    Rational s = 0;
    for (Index r = 0; r < 6; ++r) s += fc.config.grading()(r) * Rational(fc.config.matrix()(r, c));
    EXPECT_EQ(s, Rational(1));
  }
  EXPECT_EQ(fc.column_of(vec({1, 0, 0, 0, 0, 0})), -1);
}

TEST(FiberConfiguration, TriangleMatrixUpToColumnPermutation) {
  IntMatrix shown(6, 5);
  shown << 1, 1, 0, 0, 0,
           0, 0, 2, 1, 0,
           0, 0, 0, 1, 2,
           1, 0, 0, 0, 1,
           0, 2, 0, 1, 0,
           1, 0, 1, 0, 0;
  auto fc = fiber_configuration(complete_graph_config(3, true).cfg, vec({2, 2, 2}));
  std::multiset<oracle::Key> a, b;
  for (Index c = 0; c < 5; ++c) {
    a.insert(oracle::key(shown.col(c)));
    b.insert(oracle::key(fc.config.matrix().col(c)));
  }
  EXPECT_EQ(a, b);
}

TEST(FiberConfiguration, ProjectAndEmbedRoundTrip) {
  auto cfg = complete_graph_config(3, true).cfg;
  auto fc = fiber_configuration(cfg, vec({2, 2, 2}));
  oracle::for_each_box_point(5, 0, 2, [&](const IntVector& y) {
    LiftedPoint lp = embed_fb(y, fc);
    EXPECT_EQ(static_cast<Int>(lp.slices.size()), y.sum());
    for (const auto& s : lp.slices) EXPECT_GE(fc.column_of(s), 0);
    EXPECT_EQ(project_fb(lp, fc), y);
  });
}

TEST(FiberConfiguration, RejectsEmptyAndZeroFibers) {
  auto cfg = complete_graph_config(3, false).cfg;
  EXPECT_THROW(fiber_configuration(cfg, vec({1, 0, 0})), PreconditionViolated);
  EXPECT_THROW(fiber_configuration(cfg, vec({0, 0, 0})), PreconditionViolated);
}

TEST(FiberConfiguration, ProjectRejectsForeignSlices) {
  auto cfg = complete_graph_config(3, true).cfg;
  auto fc = fiber_configuration(cfg, vec({2, 2, 2}));
  LiftedPoint lp;
  lp.slices = {vec({1, 0, 0, 0, 0, 0})};
  EXPECT_THROW(project_fb(lp, fc), SliceNotInFiber);
}
