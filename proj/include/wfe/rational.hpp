#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wfe {

// Exact rational with canonical form gcd(num,den)=1, den>=1.
// Used for efficiency parameters kappa = a/b and for resource ledgers,
// so stopping decisions in the discrete model never see floating error.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational &o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational &o) const { return !(*this == o); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Rational reduce_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("reduce_rational: zero denominator");
  if (den < 0) { num = -num; den = -den; }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
  return Rational{num, den};
}

namespace detail {

inline std::int64_t checked_i64(__int128 v, const char *what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(what);
  return static_cast<std::int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) { const __int128 t = a % b; a = b; b = t; }
  return a;
}

}  // namespace detail

inline Rational operator+(const Rational &a, const Rational &b) {
  const __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
  const __int128 d = static_cast<__int128>(a.den) * b.den;
  const __int128 g = n == 0 ? d : detail::gcd128(n, d);
  return Rational{detail::checked_i64(n / g, "rational overflow"),
                  detail::checked_i64(d / g, "rational overflow")};
}

inline Rational operator-(const Rational &a, const Rational &b) {
  return a + Rational{-b.num, b.den};
}

inline Rational operator*(const Rational &a, const Rational &b) {
  const Rational x = reduce_rational(a.num, b.den);
  const Rational y = reduce_rational(b.num, a.den);
  const __int128 n = static_cast<__int128>(x.num) * y.num;
  const __int128 d = static_cast<__int128>(x.den) * y.den;
  return Rational{detail::checked_i64(n, "rational overflow"),
                  detail::checked_i64(d, "rational overflow")};
}

inline bool operator<(const Rational &a, const Rational &b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
inline bool operator>(const Rational &a, const Rational &b) { return b < a; }
inline bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }

// Parses "a/b", "a", or a plain decimal like "0.3" (exact: 3/10).
Rational parse_rational(const std::string &text);

}  // namespace wfe
