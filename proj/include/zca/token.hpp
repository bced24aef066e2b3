#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zca {

/// A generator x_i or its formal inverse X_i (1-based index).
struct Token {
  int index = 1;
  bool inverse = false;

  friend bool operator==(const Token&, const Token&) = default;

  // Canonical order x_1 < ... < x_n < X_1 < ... < X_n; this is the order the
  // chain automaton forces on words.
  friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
    if (a.inverse != b.inverse) return a.inverse <=> b.inverse;
    return a.index <=> b.index;
  }
};

using Word = std::vector<Token>;

inline std::string to_string(Token t) {
  return (t.inverse ? "X" : "x") + std::to_string(t.index);
}

/// Parses "x3" / "X3". Returns nullopt for anything else.
inline std::optional<Token> parse_token(const std::string& s) {
  if (s.size() < 2) return std::nullopt;
  if (s[0] != 'x' && s[0] != 'X') return std::nullopt;
  int idx = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    if (idx > 100000000) return std::nullopt;
    idx = idx * 10 + (s[i] - '0');
  }
  if (idx < 1) return std::nullopt;
  return Token{idx, s[0] == 'X'};
}

/// Whitespace-separated token syntax used by the CLI and all file formats.
/// Throws std::invalid_argument naming the offending token.
inline Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != '\r') ++j;
    if (j > i) {
      std::string tok = text.substr(i, j - i);
      auto t = parse_token(tok);
      if (!t) throw std::invalid_argument("bad token \"" + tok + "\"");
      w.push_back(*t);
    }
    i = j;
  }
  return w;
}

inline std::string format_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) s += " ";
    s += to_string(w[i]);
  }
  return s;
}

/// Empty words print as the epsilon sign in reports.
inline std::string format_word_or_epsilon(const Word& w) {
  return w.empty() ? std::string("ε") : format_word(w);
}

/// The alphabet X^{±} of a free basis x_1..x_n together with the formal
/// inverses X_1..X_n. Distinctness of the 2n tokens and the involution
/// inverse(x_i) = X_i hold by construction.
class Alphabet {
 public:
  explicit Alphabet(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("alphabet rank must be positive");
  }

  int rank() const { return rank_; }

  bool contains(Token t) const { return t.index >= 1 && t.index <= rank_; }

  /// x_1..x_n followed by X_1..X_n.
  std::vector<Token> tokens() const {
    std::vector<Token> ts;
    ts.reserve(2 * static_cast<std::size_t>(rank_));
    for (int i = 1; i <= rank_; ++i) ts.push_back(Token{i, false});
    for (int i = 1; i <= rank_; ++i) ts.push_back(Token{i, true});
    return ts;
  }

  static Token inverse(Token t) { return Token{t.index, !t.inverse}; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

}  // namespace zca
