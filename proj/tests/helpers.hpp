#pragma once

// Shared test fixtures: the seeded random corpus, the candidate automata the
// refutation engine is exercised on, and oracles that stay independent of the
// library's implementation route (cofactor determinants instead of
// elimination, plain word odometers instead of run graphs).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "zca/abelian.hpp"
#include "zca/acceptance.hpp"
#include "zca/automaton.hpp"
#include "zca/rational.hpp"

namespace zca_test {

// Random automaton inside the corpus bounds: <= 4 states, m <= 2, alphabet
// rank <= 2, vector entries in [-2, 2], a handful of letter and epsilon
// edges. Every generated automaton passes validate().
inline zca::CounterAutomaton random_automaton(std::mt19937& rng) {
  std::uniform_int_distribution<int> states_d(1, 4), m_d(0, 2), rank_d(1, 2);
  const int nstates = states_d(rng);
  const int m = m_d(rng);
  const int rank = rank_d(rng);

  zca::CounterAutomaton a;
  a.counters = m;
  a.alphabet = zca::Alphabet(rank);
  for (int i = 0; i < nstates; ++i) a.add_state("q" + std::to_string(i));
  a.initial = "q0";
  std::bernoulli_distribution final_d(0.5);
  for (int i = 0; i < nstates; ++i)
    if (final_d(rng)) a.add_final("q" + std::to_string(i));

  std::uniform_int_distribution<int> state_pick(0, nstates - 1);
  std::uniform_int_distribution<int> entry_d(-2, 2);
  std::uniform_int_distribution<int> letter_d(0, 2 * rank - 1);
  auto vec = [&] {
    zca::CounterVector v(static_cast<std::size_t>(m));
    for (auto& e : v) e = entry_d(rng);
    return v;
  };
  auto state = [&] { return "q" + std::to_string(state_pick(rng)); };

  std::uniform_int_distribution<int> letter_count_d(0, 7), eps_count_d(0, 3);
  const int letter_edges = letter_count_d(rng);
  const int eps_edges = eps_count_d(rng);
  for (int i = 0; i < letter_edges; ++i) {
    int l = letter_d(rng);
    zca::Token t{l % rank + 1, l >= rank};
    a.add_edge({state(), state(), vec(), t});
  }
  for (int i = 0; i < eps_edges; ++i) a.add_edge({state(), state(), vec(), std::nullopt});
  return a;
}

// Candidate that counts only x1/X1 on its single counter and ignores the
// second generator: accepts every canonical-order word with #x1 = #X1.
inline zca::CounterAutomaton projection_candidate() {
  zca::CounterAutomaton a;
  a.counters = 1;
  a.alphabet = zca::Alphabet(2);
  a.add_state("s0");
  a.initial = "s0";
  a.add_final("s0");
  a.add_edge({"s0", "s0", {1}, zca::Token{1, false}});
  a.add_edge({"s0", "s0", {0}, zca::Token{2, false}});
  a.add_edge({"s0", "s0", {-1}, zca::Token{1, true}});
  a.add_edge({"s0", "s0", {0}, zca::Token{2, true}});
  return a;
}

// Mirror image: counts only x2/X2.
inline zca::CounterAutomaton swap_candidate() {
  zca::CounterAutomaton a;
  a.counters = 1;
  a.alphabet = zca::Alphabet(2);
  a.add_state("s0");
  a.initial = "s0";
  a.add_final("s0");
  a.add_edge({"s0", "s0", {0}, zca::Token{1, false}});
  a.add_edge({"s0", "s0", {1}, zca::Token{2, false}});
  a.add_edge({"s0", "s0", {0}, zca::Token{1, true}});
  a.add_edge({"s0", "s0", {-1}, zca::Token{2, true}});
  return a;
}

// Accepts only the j2 = 0 slice {x1^a X1^a}: no second-generator edges at
// all, so no extension family of rank 2 exists.
inline zca::CounterAutomaton subset_candidate() {
  zca::CounterAutomaton a;
  a.counters = 1;
  a.alphabet = zca::Alphabet(2);
  a.add_state("s0");
  a.initial = "s0";
  a.add_final("s0");
  a.add_edge({"s0", "s0", {1}, zca::Token{1, false}});
  a.add_edge({"s0", "s0", {-1}, zca::Token{1, true}});
  return a;
}

// Applies f to every word of length <= max_len over the 2*rank tokens,
// in shortlex order.
inline void for_all_words(int rank, std::size_t max_len, const std::function<void(const zca::Word&)>& f) {
  const auto tokens = zca::Alphabet(rank).tokens();
  zca::Word w;
  auto rec = [&](auto&& self) -> void {
    f(w);
    if (w.size() == max_len) return;
    for (const zca::Token& t : tokens) {
      w.push_back(t);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
}

// Depth that keeps the brute-force oracle exhaustive where that is possible,
// and merely generous where it is not.
inline std::int64_t oracle_depth(const zca::CounterAutomaton& a, const zca::Word& w) {
  if (zca::epsilon_cycle_class(a) == zca::EpsilonCycleClass::NoEpsilonCycle)
    return zca::brute_force_exhaustive_bound(a, w);
  return static_cast<std::int64_t>(w.size() + a.states.size() + 2);
}

// Exact integer determinant by cofactor expansion; the independence oracle
// below goes through minors, a different route than the library's
// elimination.
inline std::int64_t int_det(const std::vector<std::vector<std::int64_t>>& mat) {
  const std::size_t n = mat.size();
  if (n == 1) return mat[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (mat[0][c] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(mat[i][j]);
      minor.push_back(std::move(row));
    }
    const std::int64_t term = zca::checked_mul(mat[0][c], int_det(minor));
    det = (c % 2 == 0) ? zca::checked_add(det, term) : zca::checked_sub(det, term);
  }
  return det;
}

// k vectors of dimension n are independent iff some k x k minor is nonzero.
inline bool independent_by_minors(const std::vector<std::vector<std::int64_t>>& vectors) {
  const std::size_t k = vectors.size();
  const std::size_t n = vectors.front().size();
  if (k > n) return false;
  std::vector<std::size_t> cols(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> bool {
    if (pos == k) {
      std::vector<std::vector<std::int64_t>> sq(k, std::vector<std::int64_t>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sq[i][j] = vectors[i][cols[j]];
      return int_det(sq) != 0;
    }
    for (std::size_t c = from; c < n; ++c) {
      cols[pos] = c;
      if (self(self, pos + 1, c + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

// Rank of rational vectors through the same minors route, after clearing
// denominators per vector (which preserves the span).
inline std::size_t rank_by_minors(const std::vector<std::vector<zca::Rational>>& vectors) {
  std::vector<std::vector<std::int64_t>> cleared;
  for (const auto& v : vectors) {
    std::int64_t lcm = 1;
    for (const auto& e : v) lcm = zca::checked_mul(lcm / std::gcd(lcm, e.den), e.den);
    std::vector<std::int64_t> iv;
    for (const auto& e : v) iv.push_back(zca::checked_mul(e.num, lcm / e.den));
    if (std::any_of(iv.begin(), iv.end(), [](std::int64_t x) { return x != 0; })) cleared.push_back(std::move(iv));
  }
  for (std::size_t r = cleared.size(); r >= 1; --r) {
    std::vector<std::size_t> pick(r);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> bool {
      if (pos == r) {
        std::vector<std::vector<std::int64_t>> sub;
        for (std::size_t i : pick) sub.push_back(cleared[i]);
        return independent_by_minors(sub);
      }
      for (std::size_t i = from; i < cleared.size(); ++i) {
        pick[pos] = i;
        if (self(self, pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(rec, 0, 0)) return r;
  }
  return 0;
}

}  // namespace zca_test
