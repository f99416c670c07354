#include "toric/integer.hpp"

#include <algorithm>

namespace toric {

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Rational::Rational(Wide n, Wide d) {
  if (d == 0) throw Error("rational with zero denominator");
  if (d < 0) {
    n = checked_sub(Wide(0), n);
    d = checked_sub(Wide(0), d);
  }
  Wide g = gcd_wide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

std::string Rational::str() const {
  if (den_ == 1) return wide_to_string(num_);
  return wide_to_string(num_) + "/" + wide_to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  Wide g = gcd_wide(den_, o.den_);
  Wide l = den_ / g;
  Wide n = checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, l));
  *this = Rational(n, checked_mul(l, o.den_));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  Wide g1 = gcd_wide(num_, o.den_);
  Wide g2 = gcd_wide(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  Wide n = checked_mul(num_ / g1, o.num_ / g2);
  Wide d = checked_mul(den_ / g2, o.den_ / g1);
  *this = Rational(n, d);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide l = checked_mul(a.num_, b.den_);
  Wide r = checked_mul(b.num_, a.den_);
  return l <=> r;
}

IntVector to_vector(const std::vector<Int>& v) {
  IntVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

std::vector<Int> to_std(const IntVector& v) { return std::vector<Int>(v.data(), v.data() + v.size()); }

}  // namespace toric
