#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "creg/errors.hpp"

namespace creg {

// Exact rational number on int64 numerator/denominator, always normalized
// (den > 0, gcd(num, den) == 1). Intermediate products run in 128 bits and
// the final narrowing is checked, so results are either exact or throw.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}
  constexpr Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) {
      nn = -nn;
      dd = -dd;
    }
    const __int128 g = gcd128(nn < 0 ? -nn : nn, dd);
    num_ = narrow(g == 0 ? nn : nn / g);
    den_ = narrow(g == 0 ? dd : dd / g);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_negative() const { return num_ < 0; }

  friend constexpr Rational operator-(const Rational& x) {
    return make_reduced(-(__int128)x.num_, x.den_);
  }
  friend constexpr Rational operator+(const Rational& x, const Rational& y) {
    return make_raw((__int128)x.num_ * y.den_ + (__int128)y.num_ * x.den_,
                    (__int128)x.den_ * y.den_);
  }
  friend constexpr Rational operator-(const Rational& x, const Rational& y) {
    return make_raw((__int128)x.num_ * y.den_ - (__int128)y.num_ * x.den_,
                    (__int128)x.den_ * y.den_);
  }
  friend constexpr Rational operator*(const Rational& x, const Rational& y) {
    return make_raw((__int128)x.num_ * y.num_, (__int128)x.den_ * y.den_);
  }
  friend constexpr Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::domain_error("rational division by zero");
    __int128 n = (__int128)x.num_ * y.den_;
    __int128 d = (__int128)x.den_ * y.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return make_raw(n, d);
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend constexpr bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend constexpr bool operator!=(const Rational& x, const Rational& y) {
    return !(x == y);
  }
  friend constexpr bool operator<(const Rational& x, const Rational& y) {
    return (__int128)x.num_ * y.den_ < (__int128)y.num_ * x.den_;
  }
  friend constexpr bool operator>(const Rational& x, const Rational& y) {
    return y < x;
  }
  friend constexpr bool operator<=(const Rational& x, const Rational& y) {
    return !(y < x);
  }
  friend constexpr bool operator>=(const Rational& x, const Rational& y) {
    return !(x < y);
  }

  // "num/den", or just "num" when the denominator is 1.
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.to_string();
  }

  // Accepts "-3", "7/2", "-1/4". Throws ParseError on anything else.
  static Rational parse(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&](const char* msg) -> Rational {
      throw ParseError(std::string("bad rational '") + std::string(text) +
                           "': " + msg,
                       i);
    };
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !is_digit(text[i])) return fail("expected digits");
    std::int64_t n = 0;
    while (i < text.size() && is_digit(text[i])) {
      if (n > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
        return fail("numerator out of range");
      n = n * 10 + (text[i] - '0');
      ++i;
    }
    std::int64_t d = 1;
    if (i < text.size() && text[i] == '/') {
      ++i;
      if (i >= text.size() || !is_digit(text[i]))
        return fail("expected digits after '/'");
      const std::size_t den_start = i;
      d = 0;
      while (i < text.size() && is_digit(text[i])) {
        if (d > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
          return fail("denominator out of range");
        d = d * 10 + (text[i] - '0');
        ++i;
      }
      if (d == 0) {
        i = den_start;
        return fail("zero denominator");
      }
    }
    if (i != text.size()) return fail("trailing characters");
    return Rational(neg ? -n : n, d);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  static constexpr __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static constexpr std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
  }

  // num/den already coprime, den > 0.
  static constexpr Rational make_reduced(__int128 n, __int128 d) {
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  static constexpr Rational make_raw(__int128 n, __int128 d) {
    const __int128 g = gcd128(n < 0 ? -n : n, d);
    return g == 0 ? make_reduced(0, 1) : make_reduced(n / g, d / g);
  }

  static constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
};

inline Rational abs(const Rational& x) { return x.is_negative() ? -x : x; }

}  // namespace creg
