#include "toric/fiber.hpp"

#include <algorithm>

namespace toric {

namespace {

struct FiberSearch {
  const IntMatrix& a;
  Index d;
  Index n;
  std::vector<Int> suffix_min;  // (n+1) x d, row-major by column index
  std::vector<Int> suffix_max;
  std::vector<Int> remaining;
  IntVector x;
  const std::function<bool(const IntVector&)>& fn;
  bool stopped = false;

  FiberSearch(const IntMatrix& a, const IntVector& b, const std::function<bool(const IntVector&)>& fn)
      : a(a), d(a.rows()), n(a.cols()), remaining(b.data(), b.data() + b.size()), x(IntVector::Zero(a.cols())),
        fn(fn) {
    suffix_min.assign(static_cast<std::size_t>((n + 1) * d), 0);
    suffix_max.assign(static_cast<std::size_t>((n + 1) * d), 0);
    for (Index c = n - 1; c >= 0; --c) {
      for (Index r = 0; r < d; ++r) {
        Int v = a(r, c);
        if (c == n - 1) {
          suffix_min[c * d + r] = v;
          suffix_max[c * d + r] = v;
        } else {
          suffix_min[c * d + r] = std::min(v, suffix_min[(c + 1) * d + r]);
          suffix_max[c * d + r] = std::max(v, suffix_max[(c + 1) * d + r]);
        }
      }
    }
  }

  // Columns start..n-1 must absorb exactly `total` units and produce `remaining`.
  bool feasible(Index start, Int total) const {
    if (start == n) {
      if (total != 0) return false;
      for (Index r = 0; r < d; ++r)
        if (remaining[r] != 0) return false;
      return true;
    }
    for (Index r = 0; r < d; ++r) {
      Wide lo = Wide(total) * suffix_min[start * d + r];
      Wide hi = Wide(total) * suffix_max[start * d + r];
      if (remaining[r] < lo || remaining[r] > hi) return false;
    }
    return true;
  }

  void run(Index col, Int total) {
    if (stopped) return;
    if (col == n) {
      if (!fn(x)) stopped = true;
      return;
    }
    Int upper = total;
    for (Index r = 0; r < d; ++r) {
      Int v = a(r, col);
      if (v > 0 && suffix_min[col * d + r] >= 0) upper = std::min(upper, remaining[r] / v);
    }
    for (Int value = upper; value >= 0 && !stopped; --value) {
      for (Index r = 0; r < d; ++r) remaining[r] -= value * a(r, col);
      x(col) = value;
      if (feasible(col + 1, total - value)) run(col + 1, total - value);
      for (Index r = 0; r < d; ++r) remaining[r] += value * a(r, col);
    }
    x(col) = 0;
  }
};

bool fiber_total(const Configuration& cfg, const IntVector& b, Int& total) {
  Rational t = cfg.degree_of(b);
  if (!t.is_integer() || t.sign() < 0) return false;
  total = narrow(t.num());
  return true;
}

}  // namespace

bool for_each_fiber_element(const Configuration& cfg, const IntVector& b,
                            const std::function<bool(const IntVector&)>& fn) {
  Int total = 0;
  if (!fiber_total(cfg, b, total)) return true;
  FiberSearch search(cfg.matrix(), b, fn);
  if (!search.feasible(0, total)) return true;
  search.run(0, total);
  return !search.stopped;
}

Fiber enumerate_fiber(const Configuration& cfg, const IntVector& b, std::size_t cap) {
  if (cap == 0) throw PreconditionViolated("fiber cap must be positive");
  Fiber fiber;
  fiber.b = b;
  Int total = 0;
  if (!fiber_total(cfg, b, total)) return fiber;
  fiber.total_degree = total;
  bool overflow = false;
  for_each_fiber_element(cfg, b, [&](const IntVector& x) {
    if (fiber.elements.size() >= cap) {
      overflow = true;
      return false;
    }
    fiber.elements.push_back(x);
    return true;
  });
  if (overflow) throw FiberTooLarge(cap);
  return fiber;
}

Index FiberConfiguration::column_of(const IntVector& x) const {
  auto it = column_index.find(x);
  return it == column_index.end() ? -1 : it->second;
}

FiberConfiguration fiber_configuration(const Configuration& cfg, const IntVector& b, std::size_t cap) {
  Fiber fiber = enumerate_fiber(cfg, b, cap);
  if (fiber.elements.empty()) throw PreconditionViolated("fiber is empty");
  if (fiber.total_degree <= 0) throw PreconditionViolated("fiber configuration needs b of positive degree");
  const Index n = cfg.cols();
  const Index f = static_cast<Index>(fiber.elements.size());
  IntMatrix ab(n, f);
  for (Index j = 0; j < f; ++j) ab.col(j) = fiber.elements[j];
  // vA = 1, so the induced grading is constant 1/(v.b).
  Vec<Rational> grading = Vec<Rational>::Constant(n, Rational(Wide(1), Wide(fiber.total_degree)));
  FiberConfiguration fc{cfg, b, Configuration(std::move(ab), std::move(grading)), std::move(fiber.elements), {}};
  for (Index j = 0; j < f; ++j) fc.column_index.emplace(fc.elements[j], j);
  return fc;
}

IntVector project_fb(const LiftedPoint& lp, const FiberConfiguration& fc) {
  IntVector y = IntVector::Zero(fc.columns());
  for (const auto& w : lp.slices) {
    Index j = fc.column_of(w);
    if (j < 0) throw SliceNotInFiber("slice is not an element of the fiber");
    ++y(j);
  }
  return y;
}

LiftedPoint embed_fb(const IntVector& y, const FiberConfiguration& fc) {
  if (y.size() != fc.columns()) throw PreconditionViolated("embed_fb: length mismatch");
  LiftedPoint lp;
  for (Index j = 0; j < y.size(); ++j) {
    if (y(j) < 0) throw PreconditionViolated("embed_fb: negative multiplicity");
    for (Int t = 0; t < y(j); ++t) lp.slices.push_back(fc.elements[j]);
  }
  return lp;
}

}  // namespace toric
