#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracles.hpp"
#include "toric/transport.hpp"

using namespace toric;

namespace {

Table table(Index rows, Index cols, std::initializer_list<Int> entries) {
  Table t(rows, cols);
  Index k = 0;
  for (Int v : entries) t.data()[k++] = v;
  return t;
}

std::multiset<oracle::Key> as_multiset(const std::vector<Table>& ts) {
  std::multiset<oracle::Key> out;
  for (const auto& t : ts) out.insert(oracle::Key(t.data(), t.data() + t.size()));
  return out;
}

bool proper_with(const Table& t, const Margins& m) {
  return (t.array() >= 0).all() && margins_of(t) == m;
}

// Replays a script without using the library's own checker.
void expect_valid_script(const TableMultiset& p, const TableMultiset& q, const MoveScript& script) {
  std::vector<Table> cur = p.members;
  const IntMatrix sums = p.edge_sums();
  for (const auto& st : script.steps) {
    ASSERT_LE(st.members.size(), 3u);
    ASSERT_EQ(st.before.size(), st.members.size());
    ASSERT_EQ(st.after.size(), st.members.size());
    std::set<std::size_t> distinct(st.members.begin(), st.members.end());
    ASSERT_EQ(distinct.size(), st.members.size());
    IntMatrix before_sum = IntMatrix::Zero(sums.rows(), sums.cols()), after_sum = before_sum;
    for (std::size_t x = 0; x < st.members.size(); ++x) {
      ASSERT_EQ(cur[st.members[x]], st.before[x]);
      ASSERT_TRUE(proper_with(st.after[x], p.margins));
      before_sum += st.before[x];
      after_sum += st.after[x];
      cur[st.members[x]] = st.after[x];
    }
    ASSERT_EQ(before_sum, after_sum);
  }
  IntMatrix total = IntMatrix::Zero(sums.rows(), sums.cols());
  for (const auto& t : cur) total += t;
  EXPECT_EQ(total, sums);
  EXPECT_EQ(as_multiset(cur), as_multiset(q.members));
}

TableMultiset multiset_of(std::vector<Table> members) {
  TableMultiset m;
  m.margins = margins_of(members.front());
  m.members = std::move(members);
  return m;
}

// Every nonnegative table with the given margins, by brute force over a box.
std::vector<Table> proper_tables(const Margins& m) {
  const Index rows = m.row.size(), cols = m.col.size();
  const Int top = m.row.maxCoeff();
  std::vector<Table> out;
  oracle::for_each_box_point(rows * cols, 0, top, [&](const IntVector& x) {
    Table t = Eigen::Map<const IntMatrix>(x.data(), rows, cols);
    if (margins_of(t) == m) out.push_back(t);
  });
  return out;
}

Table permutation(std::initializer_list<int> perm) {
  const Index n = static_cast<Index>(perm.size());
  Table t = Table::Zero(n, n);
  Index i = 0;
  for (int j : perm) t(i++, j) = 1;
  return t;
}

}  // namespace

TEST(Classify, ProperImproperCollisionInvalid) {
  Margins m{to_vector({2, 1}), to_vector({1, 2})};
  EXPECT_EQ(classify(table(2, 2, {1, 1, 0, 1}), m), TableClass::proper);
  EXPECT_EQ(classify(table(2, 2, {-1, 3, 2, -1}), m), TableClass::invalid);
  EXPECT_EQ(classify(table(2, 2, {2, 0, -1, 2}), m), TableClass::improper);
  EXPECT_EQ(classify(table(2, 2, {1, 2, 0, 0}), m), TableClass::collision);
  EXPECT_EQ(classify(table(2, 2, {0, 2, 1, 0}), m), TableClass::proper);
  EXPECT_EQ(classify(table(2, 2, {2, 1, -1, 1}), m), TableClass::invalid);
  EXPECT_EQ(classify(table(1, 2, {1, 2}), m), TableClass::invalid);
}

TEST(Multiset, ImproperMemberIsLocated) {
  TableMultiset m = multiset_of({table(2, 2, {0, 2, 1, 0}), table(2, 2, {2, 0, -1, 2})});
  auto im = m.improper_member();
  ASSERT_TRUE(im.has_value());
  EXPECT_EQ(im->first, 1u);
  EXPECT_EQ(im->second.row, 1);
  EXPECT_EQ(im->second.col, 0);
  EXPECT_FALSE(m.is_proper());
  EXPECT_TRUE(is_resolvable(m, ResolvablePair{1, 0}));
  EXPECT_FALSE(is_resolvable(m, ResolvablePair{0, 1}));
  // Negative edge sum: not an improper multiset.
  m.members[0] = table(2, 2, {1, 1, 0, 1});
  EXPECT_FALSE(m.is_improper());
  m.members.push_back(table(2, 2, {0, 2, 1, -1}));
  EXPECT_FALSE(m.is_improper());
  m.members.back() = table(2, 2, {0, 2, 2, -1});
  EXPECT_FALSE(m.is_improper());
}

TEST(CollisionResolution, TwoByTwo) {
  // One unit of column 1 moved from row 2 to row 1 in X and back in Y.
  TableMultiset m = multiset_of({table(2, 2, {1, 1, 1, 1}), table(2, 2, {1, 1, 1, 1})});
  m.members = {table(2, 2, {2, 1, 0, 1}), table(2, 2, {0, 1, 2, 1})};
  SwapOperation op = resolve_collisions_pair(m, 0, 1);
  const IntMatrix before = m.edge_sums();
  op.apply(m);
  EXPECT_TRUE(m.is_proper());
  EXPECT_EQ(m.edge_sums(), before);
}

TEST(CollisionResolution, RandomPairs) {
  std::mt19937_64 rng(17);
  int tried = 0;
  for (int t = 0; t < 20000 && tried < 500; ++t) {
    const int rows = 2 + t % 3, cols = 2 + (t / 3) % 3;
    auto [p, q] = random_same_fiber_pair(rows, cols, 2, 4, rng);
    (void)q;
    Table x = p.members[0], y = p.members[1];
    // Shift units between rows inside columns: X gains in `up`, Y gains in `down`.
    std::uniform_int_distribution<int> ri(0, rows - 1), rj(0, cols - 1);
    std::vector<int> excess(rows, 0);
    const int shifts = 1 + t % 3;
    for (int s = 0; s < shifts; ++s) {
      int up = ri(rng), down = ri(rng), col = rj(rng);
      if (up == down || x(down, col) == 0 || y(up, col) == 0) continue;
      if (excess[up] != 0 || excess[down] != 0) continue;
      x(down, col) -= 1, x(up, col) += 1;
      y(up, col) -= 1, y(down, col) += 1;
      excess[up] = 1, excess[down] = -1;
    }
    if (std::all_of(excess.begin(), excess.end(), [](int e) { return e == 0; })) continue;
    TableMultiset m = p;
    m.members = {x, y};
    const IntMatrix sums = m.edge_sums();
    SwapOperation op = resolve_collisions_pair(m, 0, 1);
    op.apply(m);
    ASSERT_TRUE(m.is_proper()) << "trial " << t;
    ASSERT_EQ(m.edge_sums(), sums);
    ++tried;
  }
  EXPECT_EQ(tried, 500);
}

TEST(ImproperResolution, RandomImproperMultisets) {
  std::mt19937_64 rng(23);
  int tried = 0;
  for (int t = 0; t < 200000 && tried < 300; ++t) {
    const int rows = 2 + t % 3, cols = 2 + (t / 3) % 3, members = 2 + t % 3;
    auto [p, q] = random_same_fiber_pair(rows, cols, members, 4, rng);
    (void)q;
    std::uniform_int_distribution<int> ri(0, rows - 1), rj(0, cols - 1), rk(0, members - 1);
    const int k = rk(rng), kp = rk(rng), i = ri(rng), i2 = ri(rng), j = rj(rng), j2 = rj(rng);
    if (k == kp || i == i2 || j == j2) continue;
    Table& g = p.members[k];
    Table& h = p.members[kp];
    // g += +1 (i,j2),(i2,j) -1 (i,j),(i2,j2); h gets the negation.
    if (g(i, j) != 0 || g(i2, j2) < 1 || h(i, j2) < 1 || h(i2, j) < 1) continue;
    g(i, j2) += 1, g(i2, j) += 1, g(i, j) -= 1, g(i2, j2) -= 1;
    h(i, j2) -= 1, h(i2, j) -= 1, h(i, j) += 1, h(i2, j2) += 1;
    ASSERT_TRUE(p.is_improper());
    const IntMatrix sums = p.edge_sums();
    ResolvablePair pair{static_cast<std::size_t>(k), static_cast<std::size_t>(kp)};
    ASSERT_TRUE(is_resolvable(p, pair));
    SwapOperation op = resolve_improper(p, pair);
    EXPECT_TRUE((op.first == pair.improper && op.second == pair.partner) ||
                (op.first == pair.partner && op.second == pair.improper));
    op.apply(p);
    ASSERT_TRUE(p.is_proper()) << "trial " << t;
    ASSERT_EQ(p.edge_sums(), sums);
    ++tried;
  }
  EXPECT_EQ(tried, 300);
}

TEST(ImproperResolution, RejectsProperMultiset) {
  TableMultiset m = multiset_of({permutation({0, 1, 2}), permutation({1, 2, 0})});
  EXPECT_THROW(resolve_improper(m), PreconditionViolated);
  EXPECT_FALSE(is_resolvable(m, ResolvablePair{0, 1}));
}

TEST(ReduceTowardTarget, DistanceDecreases) {
  std::mt19937_64 rng(31);
  int steps = 0;
  for (int t = 0; t < 300; ++t) {
    auto [p, q] = random_same_fiber_pair(3, 3, 3, 4, rng);
    const Table target = q.members[0];
    if (p.members[0] == target) continue;
    StepResult r = reduce_toward_target(p, 0, target);
    ASSERT_EQ(r.ops.size(), 1u);
    TableMultiset next = p;
    r.ops[0].apply(next);
    const Int before = table_distance(p.members[0], target);
    const Int after = table_distance(next.members[0], target);
    EXPECT_LT(after, before);
    EXPECT_EQ(next.edge_sums(), p.edge_sums());
    if (r.outcome.kind == StepOutcome::Kind::proper) EXPECT_TRUE(next.is_proper());
    if (r.outcome.kind == StepOutcome::Kind::improper) EXPECT_TRUE(is_resolvable(next, r.outcome.pair));
    ++steps;
  }
  EXPECT_GT(steps, 100);
}

TEST(Connect, PermutationsNeedDegreeThree) {
  // Even and odd 3 x 3 permutation matrices: both triples sum to the all-ones table.
  TableMultiset p = multiset_of({permutation({0, 1, 2}), permutation({1, 2, 0}), permutation({2, 0, 1})});
  TableMultiset q = multiset_of({permutation({1, 0, 2}), permutation({0, 2, 1}), permutation({2, 1, 0})});
  // No degree-two step leaves p: every pair sum has a unique decomposition into two proper tables.
  const auto tables = proper_tables(p.margins);
  ASSERT_EQ(tables.size(), 6u);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      const Table s = p.members[a] + p.members[b];
      int decompositions = 0;
      for (std::size_t x = 0; x < tables.size(); ++x)
        for (std::size_t y = x; y < tables.size(); ++y)
          if (tables[x] + tables[y] == s) ++decompositions;
      EXPECT_EQ(decompositions, 1);
    }
  }
  MoveScript script = connect(p, q);
  expect_valid_script(p, q, script);
  EXPECT_EQ(script.max_degree(), 3);
  EXPECT_EQ(verify_script(p, q, script), "");
}

TEST(Connect, IdenticalMultisetsNeedNoSteps) {
  std::mt19937_64 rng(3);
  auto [p, q] = random_same_fiber_pair(3, 3, 3, 3, rng);
  (void)q;
  TableMultiset r = p;
  std::reverse(r.members.begin(), r.members.end());
  EXPECT_TRUE(connect(p, r).steps.empty());
}

TEST(Connect, RejectsDifferentFibers) {
  TableMultiset p = multiset_of({permutation({0, 1, 2}), permutation({1, 2, 0})});
  TableMultiset q = multiset_of({permutation({0, 1, 2}), permutation({0, 1, 2})});
  EXPECT_THROW(connect(p, q), NotSameFiber);
}

TEST(Connect, RandomPairsGiveValidScripts) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const int rows = 2 + t % 3, cols = 2 + (t / 3) % 3, members = 2 + t % 4;
    auto [p, q] = random_same_fiber_pair(rows, cols, members, 4, rng);
    ASSERT_EQ(p.edge_sums(), q.edge_sums());
    MoveScript script = connect(p, q);
    expect_valid_script(p, q, script);
    EXPECT_LE(script.max_degree(), 3);
  }
}

TEST(Script, TextFormat) {
  TableMultiset p = multiset_of({permutation({0, 1, 2}), permutation({1, 2, 0}), permutation({2, 0, 1})});
  TableMultiset q = multiset_of({permutation({1, 0, 2}), permutation({0, 2, 1}), permutation({2, 1, 0})});
  const std::string text = connect(p, q).to_text();
  EXPECT_EQ(text.rfind("DEG 3 | 1 2 3 | ", 0), 0u) << text;
  EXPECT_EQ(table_to_text(permutation({1, 0, 2})), "0,1,0;1,0,0;0,0,1");
}
