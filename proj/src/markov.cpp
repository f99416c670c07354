#include "toric/markov.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

namespace toric {

namespace {

using ElementIndex = std::unordered_map<IntVector, std::size_t, VectorHash, VectorEqual>;

// Distinct fibers {A g+}, ordered by total degree then lexicographically on b.
std::vector<IntVector> graver_fibers(const Configuration& cfg, const MoveSet& graver, bool reverse_ties) {
  std::vector<std::pair<Int, IntVector>> keyed;
  std::set<IntVector, LexLess> seen;
  for (const auto& g : graver.moves) {
    IntVector b = cfg.matrix() * positive_part(g);
    if (seen.insert(b).second) keyed.emplace_back(degree(g), std::move(b));
  }
  std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return reverse_ties ? lex_less(y.second, x.second) : lex_less(x.second, y.second);
  });
  std::vector<IntVector> out;
  for (auto& [deg, b] : keyed) out.push_back(std::move(b));
  return out;
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

// Component label per element, using steps x -> x +/- m for m in moves.
std::vector<std::size_t> components_by_moves(const std::vector<IntVector>& fiber, const std::vector<IntVector>& moves) {
  ElementIndex index;
  for (std::size_t i = 0; i < fiber.size(); ++i) index.emplace(fiber[i], i);
  UnionFind uf(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    for (const auto& m : moves) {
      for (int s : {1, -1}) {
        IntVector y = fiber[i] + Int(s) * m;
        if ((y.array() < 0).any()) continue;
        auto it = index.find(y);
        if (it != index.end()) uf.unite(i, it->second);
      }
    }
  }
  std::vector<std::size_t> label(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) label[i] = uf.find(i);
  return label;
}

// Adds connecting moves for one fiber, star-shaped from the first component.
void connect_components(const std::vector<IntVector>& fiber, const std::vector<std::size_t>& label, bool reverse,
                        std::vector<IntVector>& basis, DegreeHistogram& histogram) {
  std::map<std::size_t, std::size_t> rep;  // root -> representative element index
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    auto it = rep.find(label[i]);
    if (it == rep.end()) {
      rep.emplace(label[i], i);
    } else {
      const bool better = reverse ? lex_less(fiber[it->second], fiber[i]) : lex_less(fiber[i], fiber[it->second]);
      if (better) it->second = i;
    }
  }
  if (rep.size() < 2) return;
  std::vector<std::size_t> reps;
  for (auto& [root, idx] : rep) reps.push_back(idx);
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return reverse ? lex_less(fiber[b], fiber[a]) : lex_less(fiber[a], fiber[b]);
  });
  for (std::size_t k = 1; k < reps.size(); ++k) {
    IntVector move = fiber[reps[k]] - fiber[reps[0]];
    ++histogram[degree(move)];
    basis.push_back(canonical_sign(move));
  }
}

template <class Weight>
Int bottleneck_spanning(const std::vector<IntVector>& fiber, Weight weight) {
  const std::size_t f = fiber.size();
  if (f <= 1) return 0;
  std::vector<Int> best(f, std::numeric_limits<Int>::max());
  std::vector<char> in(f, 0);
  Int worst = 0;
  best[0] = 0;
  for (std::size_t step = 0; step < f; ++step) {
    std::size_t u = f;
    for (std::size_t i = 0; i < f; ++i)
      if (!in[i] && (u == f || best[i] < best[u])) u = i;
    in[u] = 1;
    worst = std::max(worst, best[u]);
    for (std::size_t i = 0; i < f; ++i)
      if (!in[i]) best[i] = std::min(best[i], weight(fiber[u], fiber[i]));
  }
  return worst;
}

MinimalMarkovResult minimal_from_graver(const Configuration& cfg, const MoveSet& graver, const MarkovOptions& opts) {
  MinimalMarkovResult result;
  result.strategy = "graver-fibers";
  std::vector<IntVector> basis;
  for (const auto& b : graver_fibers(cfg, graver, opts.reverse_fiber_order)) {
    Fiber fiber = enumerate_fiber(cfg, b, opts.fiber_cap);
    ++result.fibers_examined;
    connect_components(fiber.elements, components_by_moves(fiber.elements, basis), opts.reverse_representatives,
                       basis, result.histogram);
  }
  result.basis = make_move_set(std::move(basis));
  result.complete = true;
  result.complete_through = graver.max_degree();
  return result;
}

// All fibers up to max_degree, built from multisets of columns grouped by their image.
// Components under the lower-degree basis are the classes of the "shares a column" relation,
// since that basis already connects every fiber of smaller degree.
MinimalMarkovResult minimal_by_sweep(const Configuration& cfg, const MarkovOptions& opts) {
  if (opts.max_degree < 1) throw PreconditionViolated("degree sweep needs max_degree >= 1");
  MinimalMarkovResult result;
  result.strategy = "degree-sweep";
  const IntMatrix& a = cfg.matrix();
  const Index n = a.cols();
  std::vector<IntVector> basis;
  for (Int m = 1; m <= opts.max_degree; ++m) {
    std::map<IntVector, std::vector<std::vector<std::uint32_t>>, LexLess> groups;
    std::vector<std::uint32_t> chosen;
    IntVector image = IntVector::Zero(a.rows());
    std::size_t generated = 0;
    auto rec = [&](auto&& self, std::uint32_t start) -> void {
      if (static_cast<Int>(chosen.size()) == m) {
        if (++generated > opts.fiber_cap * 16)
          throw ResourceBudgetExceeded("degree sweep exceeded its multiset budget");
        groups[image].push_back(chosen);
        return;
      }
      for (std::uint32_t j = start; j < static_cast<std::uint32_t>(n); ++j) {
        chosen.push_back(j);
        image += a.col(j);
        self(self, j);
        image -= a.col(j);
        chosen.pop_back();
      }
    };
    rec(rec, 0);
    std::vector<std::pair<const IntVector*, std::vector<std::vector<std::uint32_t>>*>> ordered;
    for (auto& [b, members] : groups) ordered.emplace_back(&b, &members);
    if (opts.reverse_fiber_order) std::reverse(ordered.begin(), ordered.end());
    for (auto& [b, members] : ordered) {
      ++result.fibers_examined;
      if (members->size() < 2) continue;
      UnionFind uf(members->size());
      std::vector<std::int64_t> first_with(static_cast<std::size_t>(n), -1);
      for (std::size_t e = 0; e < members->size(); ++e) {
        for (std::uint32_t j : (*members)[e]) {
          if (first_with[j] < 0) first_with[j] = static_cast<std::int64_t>(e);
          else uf.unite(static_cast<std::size_t>(first_with[j]), e);
        }
      }
      std::vector<std::size_t> roots;
      for (std::size_t e = 0; e < members->size(); ++e) roots.push_back(uf.find(e));
      std::size_t distinct = std::set<std::size_t>(roots.begin(), roots.end()).size();
      if (distinct < 2) continue;
      std::vector<IntVector> fiber;
      for (const auto& ms : *members) {
        IntVector y = IntVector::Zero(n);
        for (std::uint32_t j : ms) ++y(j);
        fiber.push_back(std::move(y));
      }
      connect_components(fiber, roots, opts.reverse_representatives, basis, result.histogram);
    }
    result.complete_through = m;
  }
  result.basis = make_move_set(std::move(basis));
  result.complete = false;
  return result;
}

}  // namespace

bool is_markov_basis(const Configuration& cfg, const MoveSet& moves, const MoveSet& graver, std::size_t cap) {
  for (const auto& m : moves.moves)
    if (!in_kernel(cfg.matrix(), m)) throw PreconditionViolated("basis element is not a move");
  for (const auto& b : graver_fibers(cfg, graver, false)) {
    Fiber fiber = enumerate_fiber(cfg, b, cap);
    auto label = components_by_moves(fiber.elements, moves.moves);
    if (std::set<std::size_t>(label.begin(), label.end()).size() > 1) return false;
  }
  return true;
}

Int markov_degree(const Configuration& cfg, const MarkovOptions& opts) {
  return markov_degree(cfg, graver_basis(cfg, opts.graver), opts);
}

Int markov_degree(const Configuration& cfg, const MoveSet& graver, const MarkovOptions& opts) {
  Int worst = 0;
  for (const auto& b : graver_fibers(cfg, graver, false)) {
    Fiber fiber = enumerate_fiber(cfg, b, opts.fiber_cap);
    worst = std::max(worst, bottleneck_spanning(fiber.elements, [](const IntVector& x, const IntVector& y) {
                       return degree(IntVector(x - y));
                     }));
  }
  return worst;
}

MinimalMarkovResult minimal_markov_basis(const Configuration& cfg, const MarkovOptions& opts) {
  switch (opts.strategy) {
    case MarkovStrategy::degree_sweep:
      return minimal_by_sweep(cfg, opts);
    case MarkovStrategy::graver_fibers:
      return minimal_from_graver(cfg, graver_basis(cfg, opts.graver), opts);
    case MarkovStrategy::automatic:
      break;
  }
  if (opts.max_degree >= 1 && cfg.cols() > opts.graver_column_limit) return minimal_by_sweep(cfg, opts);
  MoveSet graver;
  try {
    graver = graver_basis(cfg, opts.graver);
  } catch (const ResourceBudgetExceeded&) {
    if (opts.max_degree < 1) throw;
    return minimal_by_sweep(cfg, opts);
  }
  return minimal_from_graver(cfg, graver, opts);
}

Int markov_complexity_at(const Configuration& cfg, int copies, const MarkovOptions& opts) {
  if (copies < 1) throw PreconditionViolated("markov_complexity_at needs N >= 1");
  if (copies == 1) return 0;
  const Configuration lifted = lawrence_lift(cfg, copies);
  const MoveSet graver = graver_basis(lifted, opts.graver);
  const Index n = cfg.cols();
  Int worst = 0;
  for (const auto& b : graver_fibers(lifted, graver, false)) {
    Fiber fiber = enumerate_fiber(lifted, b, opts.fiber_cap);
    worst = std::max(worst, bottleneck_spanning(fiber.elements, [n](const IntVector& x, const IntVector& y) {
                       Int type = 0;
                       for (Index k = 0; k < x.size() / n; ++k)
                         if (x.segment(k * n, n) != y.segment(k * n, n)) ++type;
                       return type;
                     }));
  }
  return worst;
}

std::string to_string(IndispensabilityCertificate::Verdict v) {
  switch (v) {
    case IndispensabilityCertificate::Verdict::certified:
      return "certified";
    case IndispensabilityCertificate::Verdict::refuted:
      return "refuted";
    case IndispensabilityCertificate::Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(CertifyMode m) {
  switch (m) {
    case CertifyMode::exact:
      return "exact";
    case CertifyMode::forcing:
      return "forcing";
    case CertifyMode::automatic:
      return "auto";
  }
  return "?";
}

namespace {

IndispensabilityCertificate certify_exact(const LiftedMove& m) {
  using Verdict = IndispensabilityCertificate::Verdict;
  IndispensabilityCertificate cert;
  cert.mode = CertifyMode::exact;
  const std::size_t count = m.slices.size();
  const Index n = m.base_cols;
  // suffix ranges of what slices k..N-1 can still add per coordinate
  std::vector<IntVector> up(count + 1, IntVector::Zero(n)), down(count + 1, IntVector::Zero(n));
  for (std::size_t k = count; k-- > 0;) {
    up[k] = up[k + 1] + positive_part(m.slices[k]);
    down[k] = down[k + 1] - negative_part(m.slices[k]);
  }
  IntVector partial = m.slices[0];
  std::vector<std::size_t> chosen{0};
  bool found = false;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    ++cert.nodes;
    if (found || k == count) return;
    for (Index i = 0; i < n; ++i)
      if (partial(i) + up[k](i) < 0 || partial(i) + down[k](i) > 0) return;
    // include slice k
    partial += m.slices[k];
    chosen.push_back(k);
    if (partial.isZero() && chosen.size() < count) {
      found = true;
      return;
    }
    self(self, k + 1);
    if (found) return;
    chosen.pop_back();
    partial -= m.slices[k];
    self(self, k + 1);
  };
  if (count == 1) {
    cert.verdict = Verdict::certified;
    return cert;
  }
  dfs(dfs, 1);
  if (found) {
    cert.verdict = Verdict::refuted;
    cert.witness = chosen;
  } else {
    cert.verdict = Verdict::certified;
  }
  return cert;
}

IndispensabilityCertificate certify_forcing(const LiftedMove& m) {
  using Verdict = IndispensabilityCertificate::Verdict;
  IndispensabilityCertificate cert;
  cert.mode = CertifyMode::forcing;
  const std::size_t count = m.slices.size();
  const Index n = m.base_cols;
  std::vector<char> member(count, 0);
  member[0] = 1;
  std::size_t members = 1;
  IntVector partial = m.slices[0];
  while (!partial.isZero()) {
    bool progressed = false;
    for (Index i = 0; i < n && !progressed; ++i) {
      if (partial(i) == 0) continue;
      std::vector<std::size_t> outside;
      bool opposite = true;
      for (std::size_t k = 0; k < count; ++k) {
        if (member[k] || m.slices[k](i) == 0) continue;
        if ((m.slices[k](i) > 0) == (partial(i) > 0)) {
          opposite = false;
          break;
        }
        outside.push_back(k);
      }
      if (!opposite || outside.empty()) continue;
      cert.trace.push_back(ForcingStep{i, partial(i), outside});
      for (std::size_t k : outside) {
        member[k] = 1;
        partial += m.slices[k];
      }
      members += outside.size();
      progressed = true;
    }
    if (!progressed) {
      cert.verdict = Verdict::inconclusive;
      return cert;
    }
  }
  if (members == count) {
    cert.verdict = Verdict::certified;
  } else {
    cert.verdict = Verdict::refuted;
    for (std::size_t k = 0; k < count; ++k)
      if (member[k]) cert.witness.push_back(k);
  }
  return cert;
}

}  // namespace

IndispensabilityCertificate certify_indispensable_lift(const Configuration& cfg, const LiftedMove& m,
                                                       CertifyMode mode) {
  if (m.slices.empty()) throw PreconditionViolated("lifted move has no slices");
  if (m.base_cols != cfg.cols()) throw PreconditionViolated("slice width does not match the configuration");
  if (!m.sum().isZero()) throw PreconditionViolated("slices do not sum to zero");
  std::set<IntVector, LexLess> checked;
  for (std::size_t k = 0; k < m.slices.size(); ++k) {
    const IntVector& z = m.slices[k];
    if (z.size() != cfg.cols() || z.isZero())
      throw SliceNotIndispensable("slice " + std::to_string(k + 1) + " is zero");
    IntVector key = canonical_sign(z);
    if (checked.count(key)) continue;
    if (!in_kernel(cfg.matrix(), z) || !is_indispensable(cfg, z))
      throw SliceNotIndispensable("slice " + std::to_string(k + 1) + " is not an indispensable move");
    checked.insert(std::move(key));
  }
  if (mode == CertifyMode::automatic)
    mode = m.slices.size() <= kExactCertifyLimit ? CertifyMode::exact : CertifyMode::forcing;
  return mode == CertifyMode::exact ? certify_exact(m) : certify_forcing(m);
}

}  // namespace toric
