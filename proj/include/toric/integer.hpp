#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "toric/errors.hpp"

namespace toric {

using Int = std::int64_t;
using Wide = __int128;
using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using IntMatrix = Mat<Int>;
using IntVector = Vec<Int>;

template <class S>
inline S checked_add(S a, S b) {
  S r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowDetected();
  return r;
}
template <class S>
inline S checked_sub(S a, S b) {
  S r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowDetected();
  return r;
}
template <class S>
inline S checked_mul(S a, S b) {
  S r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowDetected();
  return r;
}
template <class S>
inline S abs_value(S a) {
  return a < 0 ? checked_sub(S(0), a) : a;
}

Wide gcd_wide(Wide a, Wide b);
std::string wide_to_string(Wide v);

// Narrow a wide value, throwing on loss.
inline Int narrow(Wide v) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN)) throw OverflowDetected();
  return static_cast<Int>(v);
}

// Exact rational with 128-bit numerator/denominator, always normalized (den > 0, gcd 1).
class Rational {
public:
  Rational() = default;
  Rational(Int v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(Wide n, Wide d);

  Wide num() const { return num_; }
  Wide den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  Rational operator-() const { return Rational(checked_sub(Wide(0), num_), den_); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  Wide num_ = 0;
  Wide den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Lexicographic comparison of integer vectors.
template <class A, class B>
bool lex_less(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  for (Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

struct VectorHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Index i = 0; i < v.size(); ++i) {
      h ^= static_cast<std::size_t>(v(i)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct VectorEqual {
  bool operator()(const IntVector& a, const IntVector& b) const {
    return a.size() == b.size() && a == b;
  }
};

IntVector to_vector(const std::vector<Int>& v);
std::vector<Int> to_std(const IntVector& v);

}  // namespace toric

namespace Eigen {
template <>
struct NumTraits<toric::Rational> : GenericNumTraits<toric::Rational> {
  using Real = toric::Rational;
  using NonInteger = toric::Rational;
  using Nested = toric::Rational;
  using Literal = toric::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
