#pragma once

#include <map>
#include <string>
#include <vector>

#include "zca/automaton.hpp"
#include "zca/graph.hpp"
#include "zca/token.hpp"

namespace zca {

/// The canonical Z^n word-problem automaton: one state that is both initial
/// and final, with loops (+e_i, x_i) and (-e_i, X_i). Accepts exactly the
/// words over the free basis whose exponent vector is zero.
inline CounterAutomaton canonical_word_problem(int n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  CounterAutomaton a;
  a.counters = n;
  a.alphabet = Alphabet(n);
  a.add_state("s0");
  a.initial = "s0";
  a.add_final("s0");
  for (int i = 1; i <= n; ++i) {
    CounterVector v = zero_vector(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(i - 1)] = 1;
    a.add_edge({"s0", "s0", v, Token{i, false}});
  }
  for (int i = 1; i <= n; ++i) {
    CounterVector v = zero_vector(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(i - 1)] = -1;
    a.add_edge({"s0", "s0", v, Token{i, true}});
  }
  return a;
}

/// The chain NFA for L(x_1*...x_n*X_1*...X_n*): states alpha,
/// sigma_x1..sigma_xn, sigma_X1..sigma_Xn, beta; a letter loop on each sigma
/// state; epsilon edges along the chain alpha -> sigma_x1 -> ... -> sigma_xn
/// -> sigma_X1 -> ... -> sigma_Xn -> beta. Zero counters.
inline CounterAutomaton regex_chain_nfa(int n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  CounterAutomaton a;
  a.counters = 0;
  a.alphabet = Alphabet(n);
  auto sigma = [](Token t) { return "sigma_" + to_string(t); };

  a.add_state("alpha");
  for (int i = 1; i <= n; ++i) a.add_state(sigma(Token{i, false}));
  for (int i = 1; i <= n; ++i) a.add_state(sigma(Token{i, true}));
  a.add_state("beta");
  a.initial = "alpha";
  a.add_final("beta");

  for (int i = 1; i <= n; ++i) a.add_edge({sigma(Token{i, false}), sigma(Token{i, false}), {}, Token{i, false}});
  for (int i = 1; i <= n; ++i) a.add_edge({sigma(Token{i, true}), sigma(Token{i, true}), {}, Token{i, true}});

  a.add_edge({"alpha", sigma(Token{1, false}), {}, std::nullopt});
  for (int i = 1; i < n; ++i) a.add_edge({sigma(Token{i, false}), sigma(Token{i + 1, false}), {}, std::nullopt});
  a.add_edge({sigma(Token{n, false}), sigma(Token{1, true}), {}, std::nullopt});
  for (int i = 1; i < n; ++i) a.add_edge({sigma(Token{i, true}), sigma(Token{i + 1, true}), {}, std::nullopt});
  a.add_edge({sigma(Token{n, true}), "beta", {}, std::nullopt});
  return a;
}

/// "⟨left|right⟩": the serialized form of a product state.
inline std::string product_state_id(const std::string& left, const std::string& right) {
  return "⟨" + left + "|" + right + "⟩";
}

/// Product of a finite-state automaton a1 (zero counters) with a Z^m-automaton
/// a2 over the same alphabet, accepting the intersection of their languages.
///
/// States are all pairs. A letter edge (v, x) connects pairs exactly when a1
/// has an x-edge and a2 has a (v, x)-edge between the respective components.
/// Epsilon edges arise from three rules, kept separate (so parallel edges can
/// result):
///   (i)  an epsilon edge in a1 paired with a (v, epsilon) edge in a2;
///   (ii) an epsilon edge in a1 moving alone, second component fixed, v = 0;
///   (iii) a (v, epsilon) edge in a2 moving alone, first component fixed.
inline CounterAutomaton product(const CounterAutomaton& a1, const CounterAutomaton& a2) {
  if (a1.counters != 0) throw std::invalid_argument("left product factor must have zero counters");
  if (!(a1.alphabet == a2.alphabet)) throw std::invalid_argument("product factors must share an alphabet");

  CounterAutomaton b;
  b.counters = a2.counters;
  b.alphabet = a2.alphabet;
  for (const auto& s1 : a1.states)
    for (const auto& s2 : a2.states) b.add_state(product_state_id(s1, s2));
  b.initial = product_state_id(a1.initial, a2.initial);
  for (const auto& s1 : a1.states)
    for (const auto& s2 : a2.states)
      if (a1.is_final(s1) && a2.is_final(s2)) b.add_final(product_state_id(s1, s2));

  const CounterVector zero = zero_vector(static_cast<std::size_t>(a2.counters));

  for (const Edge& e1 : a1.edges) {
    if (!e1.letter) continue;
    for (const Edge& e2 : a2.edges) {
      if (!e2.letter || !(*e2.letter == *e1.letter)) continue;
      b.add_edge({product_state_id(e1.from, e2.from), product_state_id(e1.to, e2.to), e2.vector, e1.letter});
    }
  }
  for (const Edge& e1 : a1.edges) {
    if (e1.letter) continue;
    for (const Edge& e2 : a2.edges) {
      if (e2.letter) continue;
      b.add_edge({product_state_id(e1.from, e2.from), product_state_id(e1.to, e2.to), e2.vector, std::nullopt});
    }
  }
  for (const Edge& e1 : a1.edges) {
    if (e1.letter) continue;
    for (const auto& s2 : a2.states)
      b.add_edge({product_state_id(e1.from, s2), product_state_id(e1.to, s2), zero, std::nullopt});
  }
  for (const auto& s1 : a1.states) {
    for (const Edge& e2 : a2.edges) {
      if (e2.letter) continue;
      b.add_edge({product_state_id(s1, e2.from), product_state_id(s1, e2.to), e2.vector, std::nullopt});
    }
  }
  return b;
}

/// Copy of a with a single final state, realized by a fresh state receiving a
/// zero-vector epsilon edge from each old final. Identity when a already has
/// exactly one final state.
inline CounterAutomaton with_single_final(const CounterAutomaton& a) {
  if (a.finals.size() == 1) return a;
  CounterAutomaton b = a;
  std::string fresh = "final";
  while (b.has_state(fresh)) fresh += "_";
  b.add_state(fresh);
  for (const auto& f : a.finals)
    b.add_edge({f, fresh, zero_vector(static_cast<std::size_t>(a.counters)), std::nullopt});
  b.finals = {fresh};
  return b;
}

/// The structured normal form: the product of the chain NFA with a candidate
/// accepting the Z^n word problem (single-finalized first), with every
/// product state tagged by the subautomaton A(x_i) or A(X_i) of its chain
/// component. States over alpha are folded into A(x_1) and states over beta
/// into A(X_n), which keeps the chain rule total.
///
/// Whether a2 really accepts the word problem is the caller's contract; it is
/// not checkable here.
inline CounterAutomaton structured_automaton(int n, const CounterAutomaton& a2) {
  if (a2.alphabet.rank() != n)
    throw std::invalid_argument("candidate alphabet rank " + std::to_string(a2.alphabet.rank()) +
                                " does not match n = " + std::to_string(n));
  CounterAutomaton single = with_single_final(a2);
  CounterAutomaton chain = regex_chain_nfa(n);
  CounterAutomaton b = product(chain, single);

  std::map<std::string, Token> role;
  role["alpha"] = Token{1, false};
  role["beta"] = Token{n, true};
  for (int i = 1; i <= n; ++i) {
    role["sigma_" + to_string(Token{i, false})] = Token{i, false};
    role["sigma_" + to_string(Token{i, true})] = Token{i, true};
  }
  for (const auto& s1 : chain.states)
    for (const auto& s2 : single.states) b.tags[product_state_id(s1, s2)] = role.at(s1);
  return b;
}

namespace detail {

// Position of a subautomaton in the chain A(x_1) ... A(x_n) A(X_1) ... A(X_n).
inline int chain_position(Token tag, int rank) {
  return tag.inverse ? rank + tag.index - 1 : tag.index - 1;
}

}  // namespace detail

/// Checks the structured normal form: a single final state; edges between
/// subautomata are epsilon-labeled and step one position along the chain;
/// edges inside A(a) carry only epsilon or the letter a; and every circuit
/// stays inside one subautomaton (checked through strongly connected
/// components). Violations are reported, not thrown.
inline ValidationReport verify_structure(const CounterAutomaton& a) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };
  const int rank = a.alphabet.rank();

  for (const auto& s : a.states)
    if (!a.tags.count(s)) fail("untagged state \"" + s + "\"");
  if (!rep.ok()) return rep;

  if (a.finals.size() != 1)
    fail("single final state violated: " + std::to_string(a.finals.size()) + " finals");

  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& e = a.edges[i];
    const Token from_tag = a.tags.at(e.from);
    const Token to_tag = a.tags.at(e.to);
    if (from_tag == to_tag) {
      if (e.letter && !(*e.letter == from_tag))
        fail("edge " + std::to_string(i) + ": letter " + to_string(*e.letter) + " inside subautomaton A(" +
             to_string(from_tag) + ")");
      continue;
    }
    if (e.letter)
      fail("edge " + std::to_string(i) + ": inter-subautomaton letter edge A(" + to_string(from_tag) + ") -> A(" +
           to_string(to_tag) + ")");
    if (detail::chain_position(to_tag, rank) != detail::chain_position(from_tag, rank) + 1)
      fail("edge " + std::to_string(i) + ": inter-subautomaton edge A(" + to_string(from_tag) + ") -> A(" +
           to_string(to_tag) + ") leaves the chain order");
  }

  // Circuit locality: a circuit through two tags would make them one SCC.
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(a.edges.size());
  for (const Edge& e : a.edges) arcs.emplace_back(a.state_index(e.from), a.state_index(e.to));
  auto comp = detail::strongly_connected_components(a.states.size(), arcs);
  std::map<std::size_t, Token> comp_tag;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const Token t = a.tags.at(a.states[i]);
    auto [it, fresh] = comp_tag.emplace(comp[i], t);
    if (!fresh && !(it->second == t))
      fail("circuit spans subautomata A(" + to_string(it->second) + ") and A(" + to_string(t) + ") at state \"" +
           a.states[i] + "\"");
  }
  return rep;
}

}  // namespace zca
