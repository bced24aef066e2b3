#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zca/checked.hpp"
#include "zca/token.hpp"

namespace zca {

/// Abelianization image of a word: entry i is (#x_i) - (#X_i). A word lies in
/// the word problem of Z^n exactly when its exponent vector is zero. This is
/// the ground-truth oracle and never consults an automaton.
using ExponentVector = std::vector<std::int64_t>;

inline ExponentVector exponent_vector(const Word& w, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  ExponentVector e(static_cast<std::size_t>(rank), 0);
  for (const Token& t : w) {
    if (t.index < 1 || t.index > rank)
      throw std::invalid_argument("bad token \"" + to_string(t) + "\" for rank " + std::to_string(rank));
    auto& slot = e[static_cast<std::size_t>(t.index - 1)];
    slot = t.inverse ? checked_sub(slot, 1) : checked_add(slot, 1);
  }
  return e;
}

/// The canonical word w(j) = x_1^{j_1}...x_n^{j_n} X_1^{j_1}...X_n^{j_n}.
inline Word canonical_word(const std::vector<std::int64_t>& j) {
  if (j.empty()) throw std::invalid_argument("canonical word needs rank >= 1");
  Word w;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] < 0) throw std::invalid_argument("canonical word exponents must be non-negative");
    for (std::int64_t c = 0; c < j[i]; ++c) w.push_back(Token{static_cast<int>(i) + 1, false});
  }
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::int64_t c = 0; c < j[i]; ++c) w.push_back(Token{static_cast<int>(i) + 1, true});
  return w;
}

/// Block exponents of a word matching x_1*...x_n*X_1*...X_n*.
struct CanonicalForm {
  ExponentVector u;  // exponents of the x-blocks
  ExponentVector v;  // exponents of the X-blocks
};

/// Reads off (u, v) when w is in canonical order; nullopt otherwise.
/// The word is in the word problem of Z^n iff u == v.
inline std::optional<CanonicalForm> parse_canonical_form(const Word& w, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  CanonicalForm f;
  f.u.assign(static_cast<std::size_t>(rank), 0);
  f.v.assign(static_cast<std::size_t>(rank), 0);
  int block = 0;  // 0..rank-1 = x-blocks, rank..2*rank-1 = X-blocks
  for (const Token& t : w) {
    if (t.index < 1 || t.index > rank) return std::nullopt;
    int b = t.inverse ? rank + t.index - 1 : t.index - 1;
    if (b < block) return std::nullopt;
    block = b;
    auto& slot = t.inverse ? f.v[static_cast<std::size_t>(t.index - 1)]
                           : f.u[static_cast<std::size_t>(t.index - 1)];
    slot = checked_add(slot, 1);
  }
  return f;
}

}  // namespace zca
