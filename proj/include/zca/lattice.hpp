#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "zca/checked.hpp"
#include "zca/rational.hpp"

namespace zca {

namespace detail {

// Incremental row-echelon basis over Q. Rows are kept reduced with pivot
// entry 1; inserting a vector reduces it first, so rank queries and
// membership ("does v lie in the span") share one code path.
class RationalEchelon {
 public:
  explicit RationalEchelon(std::size_t cols) : cols_(cols) {}

  /// Reduces v against the basis; a nonzero residue joins the basis.
  /// Returns true when the rank grew.
  bool insert(std::vector<Rational> v) {
    reduce(v);
    std::size_t pivot = cols_;
    for (std::size_t i = 0; i < cols_; ++i) {
      if (!v[i].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == cols_) return false;
    const Rational lead = v[pivot];
    for (auto& e : v) e = e / lead;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  bool in_span(std::vector<Rational> v) const {
    reduce(v);
    for (const auto& e : v)
      if (!e.is_zero()) return false;
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::vector<Rational>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < cols_; ++i) v[i] = v[i] - c * rows_[r][i];
    }
  }

  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Rational> to_rational(const std::vector<std::int64_t>& v) {
  std::vector<Rational> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

}  // namespace detail

/// Linear independence over Q of integer vectors, by exact elimination.
inline bool is_independent(const std::vector<std::vector<std::int64_t>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("independence test needs at least one vector");
  const std::size_t n = vectors.front().size();
  detail::RationalEchelon ech(n);
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("vector dimension mismatch");
    if (!ech.insert(detail::to_rational(v))) return false;
  }
  return true;
}

/// Integer coefficients alpha, not all zero, with sum(alpha_i * v_i) = 0,
/// gcd of the nonzero entries 1 and the first nonzero entry positive.
struct DependenceCertificate {
  std::vector<std::int64_t> coefficients;
};

/// Exact integer dependence for k vectors in Z^m with k > m (existence is
/// guaranteed). A rational kernel basis is computed by row reduction; each
/// basis vector is cleared of denominators and normalized, and ties are
/// broken by smallest L1 norm, then lexicographically.
inline DependenceCertificate integer_dependence(const std::vector<std::vector<std::int64_t>>& vectors) {
  const std::size_t k = vectors.size();
  if (k == 0) throw std::invalid_argument("integer dependence needs at least one vector");
  const std::size_t m = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != m) throw std::invalid_argument("vector dimension mismatch");
  if (k <= m)
    throw std::invalid_argument("integer dependence requires more vectors than dimensions (k > m)");

  // Rows of the m x k matrix whose columns are the input vectors.
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = Rational(vectors[j][i]);

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < m; ++col) {
    std::size_t pr = row;
    while (pr < m && rows[pr][col].is_zero()) ++pr;
    if (pr == m) continue;
    std::swap(rows[row], rows[pr]);
    const Rational lead = rows[row][col];
    for (auto& e : rows[row]) e = e / lead;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const Rational c = rows[i][col];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < k; ++j) rows[i][j] = rows[i][j] - c * rows[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }

  std::vector<std::vector<std::int64_t>> candidates;
  for (std::size_t f = 0; f < k; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) continue;
    std::vector<Rational> alpha(k, Rational(0));
    alpha[f] = Rational(1);
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) alpha[pivot_cols[r]] = -rows[r][f];

    std::int64_t lcm = 1;
    for (const auto& e : alpha) lcm = checked_mul(lcm / std::gcd(lcm, e.den), e.den);
    std::vector<std::int64_t> ialpha(k);
    for (std::size_t j = 0; j < k; ++j) ialpha[j] = checked_mul(alpha[j].num, lcm / alpha[j].den);

    std::int64_t g = 0;
    for (auto e : ialpha) g = std::gcd(g, e < 0 ? checked_neg(e) : e);
    if (g > 1)
      for (auto& e : ialpha) e /= g;
    for (auto e : ialpha) {
      if (e == 0) continue;
      if (e < 0)
        for (auto& x : ialpha) x = checked_neg(x);
      break;
    }
    candidates.push_back(std::move(ialpha));
  }
  if (candidates.empty()) throw std::logic_error("kernel unexpectedly trivial despite k > m");

  auto better = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    const std::int64_t la = vec_l1_norm(a), lb = vec_l1_norm(b);
    if (la != lb) return la < lb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  auto best = *std::min_element(candidates.begin(), candidates.end(), better);

  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < k; ++j) s = checked_add(s, checked_mul(best[j], vectors[j][i]));
    if (s != 0) throw std::logic_error("dependence certificate failed exact re-verification");
  }
  return DependenceCertificate{std::move(best)};
}

/// A translate of a subspace of Q^n: base point plus spanning vectors.
struct AffineTranslate {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> span;
};

struct GridCoverageReport {
  std::int64_t k = 0;                            // r + 1
  int max_rank = 0;                              // m
  std::vector<std::size_t> per_translate_ranks;
  std::vector<std::int64_t> per_translate_counts;
  std::vector<std::int64_t> uncovered_point;     // lexicographically smallest
};

/// The pigeonhole certificate behind the plane-covering argument: with
/// k = r + 1, each of the r translates of rank <= m < n meets the grid
/// {1..k}^n in at most k^m points, so the grid of k^n points cannot be
/// covered and a witness point must exist. Enumerates the grid, counts exact
/// membership per translate, and returns the smallest uncovered point.
inline GridCoverageReport grid_coverage_check(int n, const std::vector<AffineTranslate>& translates) {
  if (n < 1) throw std::invalid_argument("dimension n must be positive");
  const std::size_t r = translates.size();

  GridCoverageReport rep;
  rep.k = static_cast<std::int64_t>(r) + 1;
  rep.per_translate_counts.assign(r, 0);

  std::vector<detail::RationalEchelon> spans;
  spans.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto& t = translates[i];
    if (t.base.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("translate " + std::to_string(i) + ": base dimension mismatch");
    detail::RationalEchelon ech(static_cast<std::size_t>(n));
    for (const auto& v : t.span) {
      if (v.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("translate " + std::to_string(i) + ": span vector dimension mismatch");
      ech.insert(v);
    }
    if (ech.rank() >= static_cast<std::size_t>(n))
      throw std::invalid_argument("translate " + std::to_string(i) + " has rank >= n; the bound needs rank < n");
    rep.per_translate_ranks.push_back(ech.rank());
    rep.max_rank = std::max(rep.max_rank, static_cast<int>(ech.rank()));
    spans.push_back(std::move(ech));
  }

  std::vector<std::int64_t> point(static_cast<std::size_t>(n), 1);
  bool done = false;
  while (!done) {
    bool covered = false;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Rational> delta(static_cast<std::size_t>(n));
      for (std::size_t c = 0; c < delta.size(); ++c) delta[c] = Rational(point[c]) - translates[i].base[c];
      if (spans[i].in_span(std::move(delta))) {
        rep.per_translate_counts[i] += 1;
        covered = true;
      }
    }
    if (!covered && rep.uncovered_point.empty()) rep.uncovered_point = point;

    // Lexicographic odometer over {1..k}^n.
    std::size_t d = point.size();
    while (d > 0) {
      --d;
      if (point[d] < rep.k) {
        ++point[d];
        std::fill(point.begin() + static_cast<std::ptrdiff_t>(d) + 1, point.end(), 1);
        break;
      }
      if (d == 0) done = true;
    }
  }
  if (rep.uncovered_point.empty())
    throw std::logic_error("grid fully covered; impossible for translates of rank < n");
  return rep;
}

}  // namespace zca
