#pragma once

// Brute-force reference computations shared by the test suites. Nothing here calls the
// library algorithms under test; only plain loops over boxes.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "toric/integer.hpp"

namespace oracle {

using toric::Index;
using toric::Int;
using toric::IntMatrix;
using toric::IntVector;
using Key = std::vector<Int>;

inline Key key(const IntVector& v) { return Key(v.data(), v.data() + v.size()); }

// Calls fn on every integer vector with lo <= x_i <= hi.
inline void for_each_box_point(Index n, Int lo, Int hi, const std::function<void(const IntVector&)>& fn) {
  IntVector x = IntVector::Constant(n, lo);
  for (;;) {
    fn(x);
    Index i = n - 1;
    while (i >= 0 && x(i) == hi) x(i--) = lo;
    if (i < 0) return;
    ++x(i);
  }
}

inline bool is_zero_product(const IntMatrix& a, const IntVector& x) {
  for (Index r = 0; r < a.rows(); ++r) {
    Int s = 0;
    for (Index c = 0; c < a.cols(); ++c) s += a(r, c) * x(c);
    if (s != 0) return false;
  }
  return true;
}

inline bool conformal_below(const IntVector& u, const IntVector& v) {
  for (Index i = 0; i < u.size(); ++i) {
    if (u(i) * v(i) < 0) return false;
    if (std::abs(u(i)) > std::abs(v(i))) return false;
  }
  return true;
}

// Nonzero kernel vectors in the box.
inline std::vector<IntVector> box_kernel(const IntMatrix& a, Int bound) {
  std::vector<IntVector> out;
  for_each_box_point(a.cols(), -bound, bound, [&](const IntVector& x) {
    if (!x.isZero() && is_zero_product(a, x)) out.push_back(x);
  });
  return out;
}

// Signed conformally minimal kernel vectors in the box [-bound,bound]^n.
inline std::set<Key> box_graver(const IntMatrix& a, Int bound) {
  const auto kernel = box_kernel(a, bound);
  std::set<Key> out;
  for (const auto& z : kernel) {
    bool minimal = true;
    for (const auto& h : kernel) {
      if (h != z && conformal_below(h, z)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(key(z));
  }
  return out;
}

// Nonnegative x with a x = b, all entries at most cap_entry.
inline std::set<Key> naive_fiber(const IntMatrix& a, const IntVector& b, Int cap_entry) {
  std::set<Key> out;
  for_each_box_point(a.cols(), 0, cap_entry, [&](const IntVector& x) {
    if (a * x == b) out.insert(key(x));
  });
  return out;
}

// Determinant by cofactor expansion; fine for k <= 5.
inline Int determinant(const IntMatrix& m) {
  const Index k = m.rows();
  if (k == 0) return 1;
  if (k == 1) return m(0, 0);
  Int det = 0;
  for (Index c = 0; c < k; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(k - 1, k - 1);
    for (Index r = 1; r < k; ++r)
      for (Index cc = 0, t = 0; cc < k; ++cc)
        if (cc != c) minor(r - 1, t++) = m(r, cc);
    det += ((c % 2) ? -1 : 1) * m(0, c) * determinant(minor);
  }
  return det;
}

inline Int gcd(Int a, Int b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// gcd of the maximal minors of the n x k matrix whose columns are the vectors.
// Equals 1 exactly when the vectors span a saturated lattice.
inline Int maximal_minor_gcd(const std::vector<IntVector>& cols) {
  const Index k = static_cast<Index>(cols.size());
  if (k == 0) return 1;
  const Index n = cols.front().size();
  std::vector<Index> pick(k);
  Int g = 0;
  std::function<void(Index, Index)> rec = [&](Index pos, Index start) {
    if (pos == k) {
      IntMatrix m(k, k);
      for (Index r = 0; r < k; ++r)
        for (Index c = 0; c < k; ++c) m(r, c) = cols[c](pick[r]);
      g = gcd(g, determinant(m));
      return;
    }
    for (Index i = start; i < n; ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return g;
}

// Rank by fraction-free integer elimination; small inputs only.
inline Index rank(IntMatrix m) {
  Index r = 0;
  for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Index p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(r));
    for (Index i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Int f = m(i, c), g = m(r, c);
      m.row(i) = (m.row(i) * g - m.row(r) * f).eval();
      Int d = 0;
      for (Index j = 0; j < m.cols(); ++j) d = gcd(d, m(i, j));
      if (d > 1) m.row(i) /= d;
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
