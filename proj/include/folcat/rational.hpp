#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace folcat {

/// Exact rational arithmetic on 64-bit numerator/denominator.
/// Invariants: den > 0, gcd(|num|, den) = 1. Intermediate products are
/// computed in 128 bits; narrowing back to 64 bits throws on overflow.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("rational: overflow");
    return static_cast<long long>(v);
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return from128((__int128)x.num * y.den + (__int128)y.num * x.den,
                   (__int128)x.den * y.den);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return from128((__int128)x.num * y.den - (__int128)y.num * x.den,
                   (__int128)x.den * y.den);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return from128((__int128)x.num * y.num, (__int128)x.den * y.den);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num == 0) throw std::domain_error("rational: division by zero");
    return from128((__int128)x.num * y.den, (__int128)x.den * y.num);
  }
  friend Rational operator-(const Rational& x) {
    Rational r = x;
    r.num = -r.num;
    return r;
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num == y.num && x.den == y.den;
  }
  friend bool operator!=(const Rational& x, const Rational& y) {
    return !(x == y);
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return (__int128)x.num * y.den < (__int128)y.num * x.den;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) {
    return !(y < x);
  }
  friend bool operator>=(const Rational& x, const Rational& y) {
    return !(x < y);
  }
};

inline std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on anything else.
inline Rational parse_rational(const std::string& text) {
  std::size_t pos = 0;
  auto read_int = [&]() -> long long {
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("not a rational: " + text);
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  };
  const long long n = read_int();
  if (pos == text.size()) return Rational(n);
  if (text[pos] != '/') throw std::invalid_argument("not a rational: " + text);
  ++pos;
  const long long d = read_int();
  if (pos != text.size()) throw std::invalid_argument("not a rational: " + text);
  return Rational(n, d);
}

}  // namespace folcat
