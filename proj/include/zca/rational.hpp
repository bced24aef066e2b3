#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "zca/checked.hpp"

namespace zca {

/// Exact rational with checked 64-bit numerator/denominator, always kept
/// normalized (denominator positive, gcd 1). No floating point anywhere.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = checked_neg(num);
      den = checked_neg(den);
    }
    std::int64_t g = std::gcd(num < 0 ? checked_neg(num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)), checked_mul(a.den, b.den));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)), checked_mul(a.den, b.den));
  }
  friend Rational operator-(const Rational& a) { return Rational(checked_neg(a.num), a.den); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("rational division by zero");
    return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  /// Parses "p" or "p/q" with optional sign. Returns nullopt on bad syntax.
  static std::optional<Rational> parse(const std::string& s) {
    auto parse_int = [](const std::string& t) -> std::optional<std::int64_t> {
      if (t.empty()) return std::nullopt;
      std::size_t i = 0;
      bool neg = false;
      if (t[0] == '-' || t[0] == '+') {
        neg = t[0] == '-';
        i = 1;
      }
      if (i == t.size()) return std::nullopt;
      std::int64_t v = 0;
      for (; i < t.size(); ++i) {
        if (t[i] < '0' || t[i] > '9') return std::nullopt;
        v = checked_add(checked_mul(v, 10), t[i] - '0');
      }
      return neg ? checked_neg(v) : v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      auto n = parse_int(s);
      if (!n) return std::nullopt;
      return Rational(*n);
    }
    auto n = parse_int(s.substr(0, slash));
    auto d = parse_int(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
  }
};

}  // namespace zca
