#pragma once

// Exact rationals over 128-bit integers. Every operation returns a reduced
// fraction with positive denominator and throws poisson::overflow_error
// instead of wrapping.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "poisson/error.hpp"

namespace poisson {

__extension__ using int128 = __int128;

namespace detail {

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw overflow_error("Rational: 128-bit multiplication overflow");
  }
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw overflow_error("Rational: 128-bit addition overflow");
  }
  return r;
}

inline int128 checked_neg(int128 a) {
  int128 r;
  if (__builtin_sub_overflow(int128{0}, a, &r)) {
    throw overflow_error("Rational: 128-bit negation overflow");
  }
  return r;
}

inline int128 abs128(int128 a) { return a < 0 ? checked_neg(a) : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string128(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with negative magnitudes so INT128_MIN prints correctly.
  int128 n = negative ? v : -v;
  std::string digits;
  while (n != 0) {
    digits.push_back(char('0' - int(n % 10)));
    n /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  // NOLINTNEXTLINE(google-explicit-constructor): integers are rationals
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(int128 num, int128 den) : num_(num), den_(den) { normalize(); }

  [[nodiscard]] int128 numerator() const noexcept { return num_; }
  [[nodiscard]] int128 denominator() const noexcept { return den_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }
  [[nodiscard]] long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }

  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string to_string() const {
    if (den_ == 1) return detail::to_string128(num_);
    return detail::to_string128(num_) + "/" + detail::to_string128(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::checked_neg(num_);
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const int128 g = detail::gcd128(a.den_, b.den_);
    const int128 da = a.den_ / g;
    const int128 db = b.den_ / g;
    const int128 num = detail::checked_add(detail::checked_mul(a.num_, db),
                                           detail::checked_mul(b.num_, da));
    return {num, detail::checked_mul(a.den_, db)};
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first so intermediate products stay small.
    const int128 g1 = detail::gcd128(a.num_, b.den_);
    const int128 g2 = detail::gcd128(b.num_, a.den_);
    const int128 n1 = g1 == 0 ? a.num_ : a.num_ / g1;
    const int128 d2 = g1 == 0 ? b.den_ : b.den_ / g1;
    const int128 n2 = g2 == 0 ? b.num_ : b.num_ / g2;
    const int128 d1 = g2 == 0 ? a.den_ : a.den_ / g2;
    return {detail::checked_mul(n1, n2), detail::checked_mul(d1, d2)};
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw domain_error("Rational: division by zero");
    Rational inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    if (inv.den_ < 0) {
      inv.num_ = detail::checked_neg(inv.num_);
      inv.den_ = detail::checked_neg(inv.den_);
    }
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int128 lhs = detail::checked_mul(a.num_, b.den_);
    const int128 rhs = detail::checked_mul(b.num_, a.den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void normalize() {
    if (den_ == 0) throw domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = detail::checked_neg(num_);
      den_ = detail::checked_neg(den_);
    }
    const int128 g = detail::gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

inline Rational abs(const Rational& r) { return r.numerator() < 0 ? -r : r; }

}  // namespace poisson
