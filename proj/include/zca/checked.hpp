#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zca {

/// Thrown whenever an exact integer computation would leave the 64-bit range.
/// Counter arithmetic is exact by contract; wraparound is never silent.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

/// Fixed-length vector of exact signed counters (an element of Z^m).
using CounterVector = std::vector<std::int64_t>;

inline CounterVector zero_vector(std::size_t m) { return CounterVector(m, 0); }

inline bool is_zero_vector(const CounterVector& v) {
  for (auto e : v)
    if (e != 0) return false;
  return true;
}

inline CounterVector vec_add(const CounterVector& a, const CounterVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  CounterVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline CounterVector vec_sub(const CounterVector& a, const CounterVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  CounterVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

inline CounterVector vec_scale(const CounterVector& a, std::int64_t c) {
  CounterVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(a[i], c);
  return r;
}

inline std::int64_t vec_max_norm(const CounterVector& v) {
  std::int64_t m = 0;
  for (auto e : v) {
    std::int64_t x = e < 0 ? checked_neg(e) : e;
    if (x > m) m = x;
  }
  return m;
}

inline std::int64_t vec_l1_norm(const CounterVector& v) {
  std::int64_t s = 0;
  for (auto e : v) s = checked_add(s, e < 0 ? checked_neg(e) : e);
  return s;
}

/// "(1, 0)"; "()" for the empty vector. Used by all reports and DOT labels.
inline std::string format_vec(const CounterVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(v[i]);
  }
  s += ")";
  return s;
}

}  // namespace zca
