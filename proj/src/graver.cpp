#include "toric/graver.hpp"

#include <algorithm>

namespace toric {

namespace {

template <class S>
class Completion {
public:
  Completion(Index n, std::size_t max_vectors, std::size_t max_pairs)
      : n_(n), max_vectors_(max_vectors), max_pairs_(max_pairs) {}

  void seed(const std::vector<IntVector>& basis) {
    for (const auto& z : basis) {
      std::vector<S> v(static_cast<std::size_t>(n_));
      for (Index i = 0; i < n_; ++i) v[i] = S(z(i));
      S norm = norm_of(v);
      if (reduce(v, norm)) insert(std::move(v), norm, 0);
    }
  }

  void run(GraverStats* stats) {
    // Pairs are consumed by increasing norm sum; elements born at a lower level than
    // the current one are paired explicitly so nothing is skipped.
    S level = 2;
    while (level <= 2 * max_norm_) {
      level_ = level;
      std::vector<std::size_t> snapshot(buckets_.size());
      for (std::size_t t = 0; t < buckets_.size(); ++t) snapshot[t] = buckets_[t].size();
      for (S a = 1; 2 * a <= level; ++a) {
        S b = level - a;
        if (static_cast<std::size_t>(b) >= snapshot.size()) continue;
        const std::size_t na = snapshot[a];
        const std::size_t nb = snapshot[b];
        for (std::size_t p = 0; p < na; ++p) {
          const std::size_t q0 = (a == b) ? p + 1 : 0;
          for (std::size_t q = q0; q < nb; ++q) process_pair(buckets_[a][p], buckets_[b][q]);
          drain();
        }
      }
      drain();
      ++level;
    }
    if (stats) {
      stats->pairs_examined += pairs_;
      stats->intermediate_vectors = std::max(stats->intermediate_vectors, count());
    }
  }

  std::vector<IntVector> minimal_elements() const {
    std::vector<IntVector> out;
    const std::size_t m = count();
    for (std::size_t i = 0; i < m; ++i) {
      bool minimal = true;
      for (S t = 1; t <= norm_[i] && minimal; ++t) {
        if (static_cast<std::size_t>(t) >= buckets_.size()) break;
        for (std::uint32_t j : buckets_[t]) {
          if (j == i) continue;
          if (conformal_below(j, &data_[i * n_], pos_[i], neg_[i])) {
            minimal = false;
            break;
          }
        }
      }
      if (!minimal) continue;
      IntVector z(n_);
      for (Index c = 0; c < n_; ++c) z(c) = narrow(Wide(data_[i * n_ + c]));
      out.push_back(std::move(z));
    }
    return out;
  }

  std::size_t count() const { return norm_.size(); }

  Int largest_norm() const { return narrow(Wide(max_norm_)); }

  std::vector<IntVector> elements_by_norm_desc() const {
    std::vector<std::size_t> ids(count());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return norm_[a] > norm_[b]; });
    std::vector<IntVector> out;
    for (std::size_t i : ids) {
      IntVector z(n_);
      for (Index c = 0; c < n_; ++c) z(c) = narrow(Wide(data_[i * n_ + c]));
      out.push_back(std::move(z));
    }
    return out;
  }

private:
  static std::uint64_t bit(Index i) { return std::uint64_t(1) << (i & 63); }

  void masks(const S* v, std::uint64_t& pos, std::uint64_t& neg) const {
    pos = neg = 0;
    for (Index i = 0; i < n_; ++i) {
      if (v[i] > 0) pos |= bit(i);
      else if (v[i] < 0) neg |= bit(i);
    }
  }

  S norm_of(const std::vector<S>& v) const {
    S s = 0;
    for (S x : v) s = checked_add(s, abs_value(x));
    return s;
  }

  // Element j (with either sign) is conformally below v?  Returns +1, -1, or 0.
  int conformal_below(std::uint32_t j, const S* v, std::uint64_t vpos, std::uint64_t vneg) const {
    const S* g = &data_[static_cast<std::size_t>(j) * n_];
    if ((pos_[j] & ~vpos) == 0 && (neg_[j] & ~vneg) == 0) {
      bool ok = true;
      for (Index i = 0; i < n_ && ok; ++i) {
        if (g[i] == 0) continue;
        ok = (g[i] > 0) ? (v[i] >= g[i]) : (v[i] <= g[i]);
      }
      if (ok) return 1;
    }
    if ((pos_[j] & ~vneg) == 0 && (neg_[j] & ~vpos) == 0) {
      bool ok = true;
      for (Index i = 0; i < n_ && ok; ++i) {
        if (g[i] == 0) continue;
        ok = (g[i] > 0) ? (v[i] <= -g[i]) : (v[i] >= -g[i]);
      }
      if (ok) return -1;
    }
    return 0;
  }

  // Conformal normal form; returns false if v reduced to zero.
  bool reduce(std::vector<S>& v, S& norm) const {
    if (norm == 0) return false;
    std::uint64_t vp, vn;
    masks(v.data(), vp, vn);
    for (S t = 1; t <= norm && static_cast<std::size_t>(t) < buckets_.size(); ++t) {
      for (std::uint32_t j : buckets_[t]) {
        if (t > norm) break;
        int sign;
        while ((sign = conformal_below(j, v.data(), vp, vn)) != 0) {
          const S* g = &data_[static_cast<std::size_t>(j) * n_];
          for (Index i = 0; i < n_; ++i) v[i] = (sign > 0) ? v[i] - g[i] : v[i] + g[i];
          norm -= norm_[j];
          if (norm == 0) return false;
          masks(v.data(), vp, vn);
        }
      }
    }
    return true;
  }

  void insert(std::vector<S> v, S norm, S /*level*/) {
    // canonical sign
    for (Index i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      if (v[i] < 0)
        for (auto& x : v) x = -x;
      break;
    }
    if (count() >= max_vectors_)
      throw ResourceBudgetExceeded("Graver completion exceeded " + std::to_string(max_vectors_) + " vectors");
    const std::uint32_t id = static_cast<std::uint32_t>(count());
    std::uint64_t p, q;
    masks(v.data(), p, q);
    data_.insert(data_.end(), v.begin(), v.end());
    pos_.push_back(p);
    neg_.push_back(q);
    norm_.push_back(norm);
    if (static_cast<std::size_t>(norm) >= buckets_.size()) buckets_.resize(static_cast<std::size_t>(norm) + 1);
    buckets_[norm].push_back(id);
    max_norm_ = std::max(max_norm_, norm);
    // Partners whose combined norm is already at or below the running level are paired now.
    if (level_ > 0) {
      for (S t = 1; t + norm <= level_ && static_cast<std::size_t>(t) < buckets_.size(); ++t)
        for (std::uint32_t j : buckets_[t])
          if (j != id) pending_.emplace_back(j, id);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      process_pair(a, b);
    }
  }

  void process_pair(std::uint32_t a, std::uint32_t b) {
    const bool clash_sum = ((pos_[a] & neg_[b]) | (neg_[a] & pos_[b])) != 0;
    const bool clash_diff = ((pos_[a] & pos_[b]) | (neg_[a] & neg_[b])) != 0;
    if (clash_sum) combine(a, b, 1);
    if (clash_diff) combine(a, b, -1);
  }

  void combine(std::uint32_t a, std::uint32_t b, int sign) {
    if (++pairs_ > max_pairs_ && max_pairs_ != 0)
      throw ResourceBudgetExceeded("Graver completion exceeded " + std::to_string(max_pairs_) + " combinations");
    const S* x = &data_[static_cast<std::size_t>(a) * n_];
    const S* y = &data_[static_cast<std::size_t>(b) * n_];
    std::vector<S> v(static_cast<std::size_t>(n_));
    bool cancels = false;
    for (Index i = 0; i < n_; ++i) {
      v[i] = sign > 0 ? checked_add(x[i], y[i]) : checked_sub(x[i], y[i]);
      if (x[i] != 0 && y[i] != 0 && ((x[i] > 0) == (y[i] > 0)) != (sign > 0)) cancels = true;
    }
    if (!cancels) return;  // folded masks can report clashes that do not exist
    S norm = norm_of(v);
    if (reduce(v, norm)) insert(std::move(v), norm, level_);
  }

  Index n_;
  std::size_t max_vectors_;
  std::size_t max_pairs_;
  std::vector<S> data_;
  std::vector<std::uint64_t> pos_, neg_;
  std::vector<S> norm_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pending_;
  S max_norm_ = 0;
  S level_ = 0;
  std::size_t pairs_ = 0;
};

template <class S>
std::vector<IntVector> complete(const IntMatrix& matrix, const std::vector<IntVector>& basis,
                                const GraverOptions& opts, GraverStats* stats) {
  Completion<S> engine(matrix.cols(), opts.max_vectors, opts.max_pairs);
  try {
    engine.seed(basis);
    engine.run(stats);
  } catch (const ResourceBudgetExceeded& e) {
    // Certify the largest elements seen so far as genuine Graver elements.
    Int bound = 0;
    std::size_t budget = 2'000'000;
    for (const auto& z : engine.elements_by_norm_desc()) {
      if (one_norm(z) <= bound) break;
      int verdict = is_primitive(matrix, z, budget / 4);
      if (verdict == 1) {
        bound = one_norm(z);
        break;
      }
      if (budget < 1000) break;
      budget /= 2;
    }
    throw ResourceBudgetExceeded(e.what(), bound);
  }
  return engine.minimal_elements();
}

}  // namespace

MoveSet graver_basis(const IntMatrix& matrix, const GraverOptions& opts, GraverStats* stats) {
  std::vector<IntVector> basis = kernel_lattice_basis(matrix);
  if (basis.empty()) return MoveSet{};
  std::vector<IntVector> result;
  try {
    result = complete<Int>(matrix, basis, opts, stats);
  } catch (const OverflowDetected&) {
    if (!opts.allow_wide) throw;
    if (stats) stats->used_wide = true;
    result = complete<Wide>(matrix, basis, opts, stats);
  }
  return make_move_set(std::move(result));
}

IntMatrix graver_matrix(const MoveSet& graver, Index n) {
  IntMatrix m(n, static_cast<Index>(graver.size()));
  for (std::size_t j = 0; j < graver.size(); ++j) m.col(static_cast<Index>(j)) = graver.moves[j];
  return m;
}

Int graver_complexity(const Configuration& cfg, const GraverOptions& opts) {
  MoveSet g = graver_basis(cfg, opts);
  if (g.size() == 0) return 0;
  MoveSet gg = graver_basis(graver_matrix(g, cfg.cols()), opts);
  return gg.max_one_norm();
}

int is_primitive(const IntMatrix& matrix, const IntVector& z, std::size_t node_limit) {
  const Index d = matrix.rows();
  std::vector<Index> support;
  for (Index i = 0; i < z.size(); ++i)
    if (z(i) != 0) support.push_back(i);
  const Index s = static_cast<Index>(support.size());
  // Per row, the range the remaining coordinates can still contribute.
  std::vector<Wide> lo((s + 1) * d, 0), hi((s + 1) * d, 0);
  for (Index k = s - 1; k >= 0; --k) {
    for (Index r = 0; r < d; ++r) {
      Wide c = Wide(matrix(r, support[k])) * Wide(z(support[k]));
      lo[k * d + r] = lo[(k + 1) * d + r] + std::min<Wide>(c, 0);
      hi[k * d + r] = hi[(k + 1) * d + r] + std::max<Wide>(c, 0);
    }
  }
  std::vector<Wide> partial(d, 0);
  std::size_t nodes = 0;
  bool limit_hit = false;
  bool found = false;
  Int chosen_total = 0;
  const Int full_total = one_norm(z);
  auto dfs = [&](auto&& self, Index k) -> void {
    if (found || limit_hit) return;
    if (++nodes > node_limit) {
      limit_hit = true;
      return;
    }
    for (Index r = 0; r < d; ++r)
      if (-partial[r] < lo[k * d + r] || -partial[r] > hi[k * d + r]) return;
    if (k == s) {
      if (chosen_total != 0 && chosen_total != full_total) found = true;
      return;
    }
    const Index c = support[k];
    const Int mag = abs_value(z(c));
    const Int sgn = z(c) > 0 ? 1 : -1;
    for (Int t = 0; t <= mag && !found && !limit_hit; ++t) {
      for (Index r = 0; r < d; ++r) partial[r] += Wide(matrix(r, c)) * sgn * t;
      chosen_total += t;
      self(self, k + 1);
      chosen_total -= t;
      for (Index r = 0; r < d; ++r) partial[r] -= Wide(matrix(r, c)) * sgn * t;
    }
  };
  dfs(dfs, 0);
  if (found) return 0;
  if (limit_hit) return -1;
  return 1;
}

bool is_indispensable(const Configuration& cfg, const IntVector& z) {
  if (z.isZero()) throw PreconditionViolated("is_indispensable: zero move");
  if (!in_kernel(cfg.matrix(), z)) throw PreconditionViolated("is_indispensable: vector is not a move");
  const IntVector plus = positive_part(z);
  const IntVector minus = negative_part(z);
  const IntVector b = cfg.matrix() * plus;
  std::size_t seen = 0;
  bool only_pair = true;
  for_each_fiber_element(cfg, b, [&](const IntVector& x) {
    if (x != plus && x != minus) {
      only_pair = false;
      return false;
    }
    ++seen;
    return true;
  });
  return only_pair && seen == 2;
}

}  // namespace toric
