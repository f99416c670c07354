#include "toric/transport.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace toric {

namespace {

bool table_less(const Table& a, const Table& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<Table> sorted_tables(std::vector<Table> t) {
  std::sort(t.begin(), t.end(), table_less);
  return t;
}

Eligibility all_eligible(const TableMultiset& m, const Eligibility& e) {
  return e.empty() ? Eligibility(m.size(), 1) : e;
}

void check_same_shape(const TableMultiset& m) {
  for (const auto& t : m.members)
    if (t.rows() != m.margins.row.size() || t.cols() != m.margins.col.size())
      throw PreconditionViolated("table shape does not match the margins");
}

// Lowest member other than `skip` that is eligible and positive at the cell.
std::optional<std::size_t> find_donor(const TableMultiset& m, const Eligibility& eligible, Cell c,
                                      std::initializer_list<std::size_t> skip) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!eligible[k]) continue;
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    if (m.members[k](c.row, c.col) > 0) return k;
  }
  return std::nullopt;
}

// Shortest alternating row path for member `giver` (rows i -> target) exchanging with `taker`,
// where giver hands over (x, col) and receives (y, col); `locked` units of giver are not available.
std::vector<ElementarySwap> alternating_path(const Table& giver, const Table& taker, Index source, Index target,
                                             const Table& locked) {
  const Index rows = giver.rows();
  const Index cols = giver.cols();
  std::vector<Index> parent(static_cast<std::size_t>(rows), -1), via(static_cast<std::size_t>(rows), -1);
  std::vector<char> seen(static_cast<std::size_t>(rows), 0);
  std::deque<Index> queue{source};
  seen[source] = 1;
  while (!queue.empty() && !seen[target]) {
    Index x = queue.front();
    queue.pop_front();
    for (Index col = 0; col < cols; ++col) {
      if (giver(x, col) - locked(x, col) < 1) continue;
      for (Index y = 0; y < rows; ++y) {
        if (seen[y] || taker(y, col) < 1) continue;
        seen[y] = 1;
        parent[y] = x;
        via[y] = col;
        queue.push_back(y);
      }
    }
  }
  if (!seen[target]) throw InternalInvariantViolation("no alternating path between colliding rows");
  std::vector<ElementarySwap> path;
  for (Index y = target; y != source; y = parent[y]) path.push_back({parent[y], y, via[y]});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Margins margins_of(const Table& t) { return Margins{t.rowwise().sum(), t.colwise().sum().transpose()}; }

std::string to_string(TableClass c) {
  switch (c) {
    case TableClass::proper:
      return "proper";
    case TableClass::improper:
      return "improper";
    case TableClass::collision:
      return "collision";
    case TableClass::invalid:
      return "invalid";
  }
  return "?";
}

TableClass classify(const Table& t, const Margins& m) {
  if (t.rows() != m.row.size() || t.cols() != m.col.size()) return TableClass::invalid;
  const IntVector rows = t.rowwise().sum();
  const IntVector cols = t.colwise().sum().transpose();
  Index negatives = 0;
  bool below_minus_one = false;
  for (Index i = 0; i < t.size(); ++i) {
    if (t.data()[i] < 0) ++negatives;
    if (t.data()[i] < -1) below_minus_one = true;
  }
  if (cols != m.col || below_minus_one) return TableClass::invalid;
  if (rows == m.row) {
    if (negatives == 0) return TableClass::proper;
    if (negatives == 1) return TableClass::improper;
    return TableClass::invalid;
  }
  if (negatives != 0) return TableClass::invalid;
  bool excess = false;
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows(i) > m.row(i) + 1) return TableClass::invalid;
    if (rows(i) == m.row(i) + 1) excess = true;
  }
  return excess ? TableClass::collision : TableClass::invalid;
}

IntMatrix TableMultiset::edge_sums() const {
  IntMatrix e = IntMatrix::Zero(margins.row.size(), margins.col.size());
  for (const auto& t : members) e += t;
  return e;
}

bool TableMultiset::is_proper() const {
  return std::all_of(members.begin(), members.end(),
                     [&](const Table& t) { return classify(t, margins) == TableClass::proper; });
}

std::optional<std::pair<std::size_t, Cell>> TableMultiset::improper_member() const {
  std::optional<std::pair<std::size_t, Cell>> found;
  for (std::size_t k = 0; k < members.size(); ++k) {
    TableClass c = classify(members[k], margins);
    if (c == TableClass::proper) continue;
    if (c != TableClass::improper || found) return std::nullopt;
    const Table& t = members[k];
    for (Index i = 0; i < t.rows(); ++i)
      for (Index j = 0; j < t.cols(); ++j)
        if (t(i, j) < 0) found = std::make_pair(k, Cell{i, j});
  }
  if (found && (edge_sums().array() < 0).any()) return std::nullopt;
  return found;
}

bool same_multiset(const std::vector<Table>& a, const std::vector<Table>& b) {
  if (a.size() != b.size()) return false;
  auto sa = sorted_tables(a), sb = sorted_tables(b);
  for (std::size_t k = 0; k < sa.size(); ++k)
    if (sa[k] != sb[k]) return false;
  return true;
}

void SwapOperation::append(const SwapOperation& other) {
  if (other.first == first && other.second == second) {
    swaps.insert(swaps.end(), other.swaps.begin(), other.swaps.end());
  } else if (other.first == second && other.second == first) {
    for (const auto& s : other.swaps) add_reversed(s.from, s.to, s.col);
  } else {
    throw InternalInvariantViolation("appending a swap on a different pair of members");
  }
}

IntMatrix SwapOperation::correction(Index rows, Index cols) const {
  IntMatrix z = IntMatrix::Zero(rows, cols);
  for (const auto& s : swaps) {
    z(s.from, s.col) -= 1;
    z(s.to, s.col) += 1;
  }
  return z;
}

void SwapOperation::apply(TableMultiset& m) const {
  const IntMatrix z = correction(m.margins.row.size(), m.margins.col.size());
  m.members[first] += z;
  m.members[second] -= z;
}

bool is_resolvable(const TableMultiset& m, const ResolvablePair& p) {
  auto im = m.improper_member();
  if (!im || im->first != p.improper || p.partner == p.improper || p.partner >= m.size()) return false;
  return m.members[p.partner](im->second.row, im->second.col) > 0;
}

SwapOperation resolve_collisions_pair(const TableMultiset& m, std::size_t k, std::size_t kp) {
  check_same_shape(m);
  if (k == kp || k >= m.size() || kp >= m.size()) throw PreconditionViolated("collision pair needs two members");
  Table a = m.members[k];
  Table b = m.members[kp];
  const Margins& mg = m.margins;
  if ((a.array() < 0).any() || (b.array() < 0).any())
    throw PreconditionViolated("collision resolution needs nonnegative members");
  if (IntVector(a.colwise().sum().transpose()) != mg.col || IntVector(b.colwise().sum().transpose()) != mg.col)
    throw PreconditionViolated("collision resolution needs exact column sums");
  if (IntVector(a.rowwise().sum() + b.rowwise().sum()) != IntVector(2 * mg.row))
    throw PreconditionViolated("row sums of the pair must add to twice the row margins");
  for (Index i = 0; i < mg.row.size(); ++i)
    if (std::abs(a.row(i).sum() - mg.row(i)) > 1) throw PreconditionViolated("row excess larger than one");

  SwapOperation op{k, kp, {}};
  const Index rows = a.rows();
  const Index cols = a.cols();
  for (;;) {
    // X is the member with the lowest colliding row.
    Index collide = -1;
    bool x_is_a = true;
    for (Index i = 0; i < rows && collide < 0; ++i) {
      if (a.row(i).sum() == mg.row(i) + 1) collide = i, x_is_a = true;
      else if (b.row(i).sum() == mg.row(i) + 1) collide = i, x_is_a = false;
    }
    if (collide < 0) break;
    Table& x = x_is_a ? a : b;
    Table& y = x_is_a ? b : a;
    const Table common = x.cwiseMin(y);
    const Table rx = x - common;
    const Table ry = y - common;
    // Symbol rows of the residual, one slot per unit, columns left to right.
    std::vector<Index> dx, dy, slot_col;
    for (Index j = 0; j < cols; ++j) {
      std::size_t before = dx.size();
      for (Index i = 0; i < rows; ++i)
        for (Int t = 0; t < rx(i, j); ++t) dx.push_back(i);
      for (Index i = 0; i < rows; ++i)
        for (Int t = 0; t < ry(i, j); ++t) dy.push_back(i);
      if (dx.size() != dy.size()) throw InternalInvariantViolation("residual column totals differ");
      slot_col.insert(slot_col.end(), dx.size() - before, j);
    }
    // Relabel: the t-th occurrence of a symbol in each row is matched while both rows have one.
    const std::size_t s = dx.size();
    std::vector<Index> count_x(rows, 0), count_y(rows, 0);
    for (Index v : dx) ++count_x[v];
    for (Index v : dy) ++count_y[v];
    std::vector<Index> occ_x(s), occ_y(s);
    std::vector<Index> seen_x(rows, 0), seen_y(rows, 0);
    for (std::size_t p = 0; p < s; ++p) occ_x[p] = seen_x[dx[p]]++;
    for (std::size_t p = 0; p < s; ++p) occ_y[p] = seen_y[dy[p]]++;
    auto matched_x = [&](std::size_t p) { return occ_x[p] < std::min(count_x[dx[p]], count_y[dx[p]]); };
    auto matched_y = [&](std::size_t p) { return occ_y[p] < std::min(count_x[dy[p]], count_y[dy[p]]); };
    // slot in X holding label (symbol, occurrence)
    std::map<std::pair<Index, Index>, std::size_t> x_slot;
    for (std::size_t p = 0; p < s; ++p) x_slot[{dx[p], occ_x[p]}] = p;
    std::size_t start = s;
    for (std::size_t p = 0; p < s && start == s; ++p)
      if (dx[p] == collide && !matched_x(p)) start = p;
    if (start == s) throw InternalInvariantViolation("colliding symbol has no unmatched slot");
    std::size_t cur = start;
    for (std::size_t guard = 0; guard <= s; ++guard) {
      // X gives dx, takes dy at this slot; Y the opposite.
      const Index col = slot_col[cur];
      x(dx[cur], col) -= 1;
      x(dy[cur], col) += 1;
      y(dx[cur], col) += 1;
      y(dy[cur], col) -= 1;
      if (x_is_a) op.add(dx[cur], dy[cur], col);
      else op.add_reversed(dx[cur], dy[cur], col);
      if (!matched_y(cur)) break;
      cur = x_slot.at({dy[cur], occ_y[cur]});
      if (guard == s) throw InternalInvariantViolation("collision path does not terminate");
    }
  }
  return op;
}

SwapOperation resolve_improper(const TableMultiset& m, const ResolvablePair& pair) {
  check_same_shape(m);
  if (!is_resolvable(m, pair)) throw PreconditionViolated("pair is not resolvable in this multiset");
  const Cell c = m.improper_member()->second;
  const Table& g = m.members[pair.improper];
  Index other = -1;
  for (Index i = 0; i < g.rows() && other < 0; ++i)
    if (i != c.row && g(i, c.col) > 0) other = i;
  if (other < 0) throw InternalInvariantViolation("improper column has no positive entry");
  SwapOperation op{pair.improper, pair.partner, {}};
  op.add(other, c.row, c.col);
  TableMultiset next = m;
  op.apply(next);
  op.append(resolve_collisions_pair(next, pair.improper, pair.partner));
  return op;
}

SwapOperation resolve_improper(const TableMultiset& m) {
  auto im = m.improper_member();
  if (!im) throw PreconditionViolated("multiset is not improper");
  auto donor = find_donor(m, Eligibility(m.size(), 1), im->second, {im->first});
  if (!donor) throw PreconditionViolated("no member is positive at the improper cell");
  return resolve_improper(m, ResolvablePair{im->first, *donor});
}

Int table_distance(const Table& g, const Table& target) { return (g - target).cwiseAbs().sum(); }

StepResult reduce_toward_target(const TableMultiset& p, std::size_t k, const Table& target,
                                const Eligibility& eligible_in) {
  check_same_shape(p);
  if (!p.is_proper()) throw PreconditionViolated("reduce_toward_target needs a proper multiset");
  if (classify(target, p.margins) != TableClass::proper) throw PreconditionViolated("target is not proper");
  const Eligibility eligible = all_eligible(p, eligible_in);
  const Table& g = p.members[k];
  StepResult result;
  result.rule = "exchange";
  if (g == target) return result;
  Index i = -1, j = -1, j2 = -1, i2 = -1;
  for (Index r = 0; r < g.rows() && i < 0; ++r)
    for (Index c = 0; c < g.cols() && i < 0; ++c)
      if (g(r, c) < target(r, c)) i = r, j = c;
  for (Index c = 0; c < g.cols() && j2 < 0; ++c)
    if (g(i, c) > target(i, c)) j2 = c;
  for (Index r = 0; r < g.rows() && i2 < 0; ++r)
    if (r != i && g(r, j) > target(r, j)) i2 = r;
  if (j2 < 0 || i2 < 0) throw PreconditionViolated("member and target do not share margins");
  auto donor = find_donor(p, eligible, Cell{i, j}, {k});
  if (!donor) throw PreconditionViolated("no donor positive at the deficient cell");
  SwapOperation op{k, *donor, {}};
  op.add(i2, i, j);   // k gains (i,j), loses (i2,j)
  op.add(i, i2, j2);  // k loses (i,j2), gains (i2,j2)
  const bool stays_proper = p.members[*donor](i2, j2) > 0;
  result.ops.push_back(op);
  if (stays_proper) {
    result.outcome.kind = StepOutcome::Kind::proper;
  } else {
    result.outcome.kind = StepOutcome::Kind::improper;
    result.outcome.pair = ResolvablePair{*donor, k};
  }
  return result;
}

StepResult improper_step(const TableMultiset& m, const ResolvablePair& pair, const Table& target,
                         const Eligibility& eligible_in) {
  check_same_shape(m);
  if (!is_resolvable(m, pair)) throw PreconditionViolated("improper_step needs a resolvable pair");
  const Eligibility eligible = all_eligible(m, eligible_in);
  const std::size_t kim = pair.improper;
  const std::size_t kpr = pair.partner;
  const Cell c = m.improper_member()->second;
  const Index i = c.row;
  const Index j = c.col;
  const Table& gpr = m.members[kpr];
  StepResult result;

  if (target(i, j) >= gpr(i, j)) {
    auto donor = find_donor(m, eligible, c, {kim, kpr});
    if (!donor) throw InternalInvariantViolation("no third donor at the improper cell");
    result.rule = "third-donor";
    result.ops.push_back(resolve_improper(m, ResolvablePair{kim, *donor}));
    result.outcome.kind = StepOutcome::Kind::proper;
    return result;
  }

  Index j2 = -1, i2 = -1;
  for (Index col = 0; col < gpr.cols() && j2 < 0; ++col)
    if (target(i, col) > gpr(i, col)) j2 = col;
  if (j2 < 0) throw InternalInvariantViolation("row of the partner has no deficit");
  for (Index r = 0; r < gpr.rows() && i2 < 0; ++r)
    if (gpr(r, j2) > target(r, j2)) i2 = r;
  if (i2 < 0) throw InternalInvariantViolation("column of the partner has no surplus");

  TableMultiset work = m;
  result.rule = "double-exchange";
  if (work.members[kim](i, j2) == 0) {
    auto donor = find_donor(work, eligible, Cell{i, j2}, {kim, kpr});
    if (!donor) throw InternalInvariantViolation("no donor for the pre-swap");
    const Table& gim = work.members[kim];
    Index i3 = -1;
    for (Index r = 0; r < gim.rows() && i3 < 0; ++r)
      if (gim(r, j2) > 0) i3 = r;
    if (i3 < 0) throw InternalInvariantViolation("improper member has an empty column");
    SwapOperation pre{kim, *donor, {}};
    pre.add(i3, i, j2);  // kim gains (i,j2), loses (i3,j2)
    TableMultiset mid = work;
    pre.apply(mid);
    Table locked = Table::Zero(gim.rows(), gim.cols());
    locked(i, j2) = 1;
    for (const auto& s : alternating_path(mid.members[kim], mid.members[*donor], i, i3, locked))
      pre.add(s.from, s.to, s.col);
    pre.apply(work);
    result.ops.push_back(pre);
    result.rule = "pre-swap+double-exchange";
  }
  const bool stays_improper = work.members[kim](i2, j) == 0;
  SwapOperation op{kpr, kim, {}};
  op.add(i, i2, j);   // kpr loses (i,j), gains (i2,j)
  op.add(i2, i, j2);  // kpr loses (i2,j2), gains (i,j2)
  result.ops.push_back(op);
  if (stays_improper) {
    result.outcome.kind = StepOutcome::Kind::improper;
    result.outcome.pair = ResolvablePair{kim, kpr};
  } else {
    result.outcome.kind = StepOutcome::Kind::proper;
  }
  return result;
}

Int MoveScript::max_degree() const {
  Int best = 0;
  for (const auto& s : steps) best = std::max(best, s.degree);
  return best;
}

std::string table_to_text(const Table& t) {
  std::ostringstream os;
  for (Index i = 0; i < t.rows(); ++i) {
    if (i) os << ';';
    for (Index j = 0; j < t.cols(); ++j) os << (j ? "," : "") << t(i, j);
  }
  return os.str();
}

std::string MoveScript::to_text() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    os << "DEG " << s.degree << " |";
    for (std::size_t k : s.members) os << ' ' << k + 1;
    os << " |";
    for (const auto& t : s.before) os << ' ' << table_to_text(t);
    os << " |";
    for (const auto& t : s.after) os << ' ' << table_to_text(t);
    os << '\n';
  }
  return os.str();
}

namespace {

Int multiset_step_degree(const std::vector<Table>& before, const std::vector<Table>& after) {
  auto a = sorted_tables(before), b = sorted_tables(after);
  std::size_t common = 0, x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x] == b[y]) ++common, ++x, ++y;
    else if (table_less(a[x], b[y])) ++x;
    else ++y;
  }
  return static_cast<Int>(a.size() - common);
}

// Replaces the tables of `work` that are not in `to` (as multisets) by the missing ones.
ScriptStep make_step(TableMultiset& work, const TableMultiset& to) {
  auto a = sorted_tables(work.members), b = sorted_tables(to.members);
  std::vector<Table> removed, added;
  std::size_t x = 0, y = 0;
  while (x < a.size() || y < b.size()) {
    if (y == b.size() || (x < a.size() && table_less(a[x], b[y]))) removed.push_back(a[x++]);
    else if (x == a.size() || table_less(b[y], a[x])) added.push_back(b[y++]);
    else ++x, ++y;
  }
  ScriptStep step;
  std::vector<char> used(work.size(), 0);
  std::vector<std::pair<std::size_t, Table>> picks;
  for (const auto& t : removed) {
    for (std::size_t k = 0; k < work.size(); ++k) {
      if (!used[k] && work.members[k] == t) {
        used[k] = 1;
        picks.emplace_back(k, t);
        break;
      }
    }
  }
  std::sort(picks.begin(), picks.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (std::size_t q = 0; q < picks.size(); ++q) {
    step.members.push_back(picks[q].first);
    step.before.push_back(picks[q].second);
    step.after.push_back(added[q]);
    work.members[picks[q].first] = added[q];
  }
  step.degree = static_cast<Int>(picks.size());
  return step;
}

// Pair resolvable both before and after a transition on `moved` members, sharing a member with them.
std::optional<ResolvablePair> common_pair(const TableMultiset& before, const TableMultiset& after,
                                          const SwapOperation& op) {
  auto ib = before.improper_member();
  auto ia = after.improper_member();
  if (!ib || !ia) return std::nullopt;
  for (std::size_t x = 0; x < before.size(); ++x) {
    for (std::size_t y = 0; y < before.size(); ++y) {
      if (x == y) continue;
      ResolvablePair pb{ib->first, ib->first == x ? y : x};
      if (ib->first != x && ib->first != y) continue;
      if (ia->first != x && ia->first != y) continue;
      ResolvablePair pa{ia->first, ia->first == x ? y : x};
      const bool touches = x == op.first || x == op.second || y == op.first || y == op.second;
      if (touches && is_resolvable(before, pb) && is_resolvable(after, pa)) return pb;
    }
  }
  return std::nullopt;
}

std::optional<ResolvablePair> any_pair(const TableMultiset& m) {
  auto im = m.improper_member();
  if (!im) return std::nullopt;
  for (std::size_t x = 0; x < m.size(); ++x) {
    ResolvablePair p{im->first, x};
    if (x != im->first && is_resolvable(m, p)) return p;
  }
  return std::nullopt;
}

// The same unordered pair seen from a multiset whose improper member may differ.
ResolvablePair orient(const TableMultiset& m, const ResolvablePair& p) {
  auto im = m.improper_member();
  if (im && im->first == p.partner) return ResolvablePair{p.partner, p.improper};
  return p;
}

TableMultiset resolved(const TableMultiset& m, const ResolvablePair& p) {
  TableMultiset out = m;
  resolve_improper(m, orient(m, p)).apply(out);
  return out;
}

}  // namespace

MoveScript connect(const TableMultiset& p, const TableMultiset& target) {
  check_same_shape(p);
  check_same_shape(target);
  if (!(p.margins == target.margins) || p.size() != target.size() || p.edge_sums() != target.edge_sums())
    throw NotSameFiber("multisets have different margins, sizes, or edge sums");
  if (!p.is_proper() || !target.is_proper()) throw PreconditionViolated("connect needs proper multisets");

  const std::size_t n = p.size();
  std::vector<TableMultiset> states{p};
  std::vector<SwapOperation> transitions;
  TableMultiset cur = p;
  Eligibility active(n, 1);
  std::vector<char> target_free(n, 1);
  std::size_t budget = 100000;

  auto push = [&](const SwapOperation& op) {
    op.apply(cur);
    transitions.push_back(op);
    states.push_back(cur);
    if (states.back().edge_sums() != p.edge_sums()) throw InternalInvariantViolation("edge sums changed");
    if (--budget == 0) throw InternalInvariantViolation("connect exceeded its step budget");
  };

  for (;;) {
    std::size_t k = n;
    for (std::size_t x = 0; x < n && k == n; ++x)
      if (active[x]) k = x;
    if (k == n) break;
    std::size_t t = n;
    for (std::size_t y = 0; y < n; ++y) {
      if (!target_free[y]) continue;
      if (t == n || table_distance(cur.members[k], target.members[y]) <
                        table_distance(cur.members[k], target.members[t]))
        t = y;
    }
    const Table& goal = target.members[t];
    std::optional<ResolvablePair> pair;
    while (pair || cur.members[k] != goal) {
      StepResult r = pair ? improper_step(cur, *pair, goal, active) : reduce_toward_target(cur, k, goal, active);
      for (const auto& op : r.ops) push(op);
      if (r.outcome.kind == StepOutcome::Kind::improper) pair = r.outcome.pair;
      else pair.reset();
      if (pair && !cur.is_improper()) throw InternalInvariantViolation("expected an improper multiset");
      if (!pair && !cur.is_proper()) throw InternalInvariantViolation("expected a proper multiset");
    }
    active[k] = 0;
    target_free[t] = 0;
  }

  // Replace every improper run by resolutions through common resolvable pairs.
  std::vector<TableMultiset> proper_states{states[0]};
  std::size_t s = 0;
  while (s + 1 < states.size()) {
    if (states[s + 1].is_proper()) {
      proper_states.push_back(states[s + 1]);
      ++s;
      continue;
    }
    std::size_t u = s + 1;
    while (u + 1 < states.size() && !states[u + 1].is_proper()) ++u;
    if (u + 1 >= states.size()) throw InternalInvariantViolation("script ends in an improper multiset");
    std::vector<ResolvablePair> sigma;
    for (std::size_t l = s + 1; l < u; ++l) {
      auto cp = common_pair(states[l], states[l + 1], transitions[l]);
      if (!cp) throw InternalInvariantViolation("improper transition without a common resolvable pair");
      sigma.push_back(*cp);
    }
    ResolvablePair current;
    if (!sigma.empty()) {
      current = sigma.front();
    } else {
      auto ap = any_pair(states[s + 1]);
      if (!ap) throw InternalInvariantViolation("improper multiset without a resolvable pair");
      current = *ap;
    }
    auto touches = [](const ResolvablePair& a, const SwapOperation& op) {
      return a.improper == op.first || a.improper == op.second || a.partner == op.first || a.partner == op.second;
    };
    // Entering and leaving pairs must share a member with the entering and leaving operations.
    if (!touches(current, transitions[s])) {
      auto ap = any_pair(states[s + 1]);
      if (ap) current = *ap;
    }
    proper_states.push_back(resolved(states[s + 1], current));
    for (std::size_t l = s + 1; l < u; ++l) {
      const ResolvablePair& sg = sigma[l - (s + 1)];
      if (sg.improper != current.improper || sg.partner != current.partner) {
        proper_states.push_back(resolved(states[l], sg));
        current = sg;
      }
      proper_states.push_back(resolved(states[l + 1], current));
    }
    proper_states.push_back(states[u + 1]);
    s = u + 1;
  }

  MoveScript script;
  script.margins = p.margins;
  TableMultiset work = p;
  for (std::size_t q = 1; q < proper_states.size(); ++q) {
    if (same_multiset(work.members, proper_states[q].members)) continue;
    script.steps.push_back(make_step(work, proper_states[q]));
  }
  std::string problem = verify_script(p, target, script);
  if (!problem.empty()) throw InternalInvariantViolation("script verification failed: " + problem);
  return script;
}

std::string verify_script(const TableMultiset& p, const TableMultiset& target, const MoveScript& script) {
  TableMultiset cur = p;
  const IntMatrix sums = p.edge_sums();
  for (std::size_t q = 0; q < script.steps.size(); ++q) {
    const auto& st = script.steps[q];
    const std::string where = "step " + std::to_string(q + 1) + ": ";
    if (st.members.size() != st.before.size() || st.members.size() != st.after.size())
      return where + "member and table counts differ";
    for (std::size_t x = 0; x < st.members.size(); ++x) {
      if (st.members[x] >= cur.size()) return where + "member index out of range";
      if (cur.members[st.members[x]] != st.before[x]) return where + "before-table does not match the state";
      cur.members[st.members[x]] = st.after[x];
    }
    if (multiset_step_degree(st.before, st.after) != st.degree) return where + "recorded degree is wrong";
    if (st.degree > 3) return where + "degree exceeds three";
    if (!cur.is_proper()) return where + "intermediate multiset is not proper";
    if (cur.edge_sums() != sums) return where + "edge sums changed";
  }
  if (!same_multiset(cur.members, target.members)) return "final multiset differs from the target";
  return {};
}

std::pair<TableMultiset, TableMultiset> random_same_fiber_pair(int rows, int cols, int members, Int max_margin,
                                                               std::mt19937_64& rng) {
  if (rows < 1 || cols < 1 || members < 1 || max_margin < 1) throw PreconditionViolated("bad random pair shape");
  auto pick = [&](int hi) { return std::uniform_int_distribution<int>(0, hi - 1)(rng); };
  Table seed = Table::Zero(rows, cols);
  const int units = 1 + pick(static_cast<int>(std::min<Int>(max_margin * std::min(rows, cols), 64)));
  for (int u = 0; u < units; ++u) {
    int i = pick(rows), j = pick(cols);
    if (seed.row(i).sum() < max_margin && seed.col(j).sum() < max_margin) seed(i, j) += 1;
  }
  if (seed.sum() == 0) seed(0, 0) = 1;
  // basic move +1 at (i1,j1),(i2,j2), -1 at (i1,j2),(i2,j1)
  auto basic = [&](Table& up, Table* down) {
    if (rows < 2 || cols < 2) return;
    int i1 = pick(rows), i2 = pick(rows), j1 = pick(cols), j2 = pick(cols);
    if (i1 == i2 || j1 == j2) return;
    Table z = Table::Zero(rows, cols);
    z(i1, j1) = z(i2, j2) = 1;
    z(i1, j2) = z(i2, j1) = -1;
    if (((up + z).array() < 0).any()) return;
    if (down && ((*down - z).array() < 0).any()) return;
    up += z;
    if (down) *down -= z;
  };
  TableMultiset p;
  p.margins = margins_of(seed);
  for (int k = 0; k < members; ++k) {
    Table t = seed;
    for (int s = 0; s < 40; ++s) basic(t, nullptr);
    p.members.push_back(t);
  }
  TableMultiset q = p;
  if (members > 1) {
    for (int s = 0; s < 60; ++s) {
      int a = pick(members), b = pick(members);
      if (a != b) basic(q.members[a], &q.members[b]);
    }
    std::shuffle(q.members.begin(), q.members.end(), rng);
  }
  return {p, q};
}

}  // namespace toric
