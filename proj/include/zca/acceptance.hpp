#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "zca/automaton.hpp"
#include "zca/path.hpp"

namespace zca {

/// Bounds for the fallback engine and for path enumeration. Counter values
/// are capped in max-norm; epsilon transitions are capped per word position.
struct SearchLimits {
  std::int64_t counter_bound = 64;
  std::optional<std::int64_t> epsilon_steps;  // default: |states|^2

  std::int64_t resolve_epsilon_steps(const CounterAutomaton& a) const {
    if (epsilon_steps) return *epsilon_steps;
    auto s = static_cast<std::int64_t>(a.states.size());
    return s * s;
  }
};

enum class VerdictKind { Accepted, Rejected, Unknown };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Accepted: return "Accepted";
    case VerdictKind::Rejected: return "Rejected";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

/// Three-valued outcome. Accepted always carries a checkable certificate;
/// Rejected is only ever produced by exhaustive engines; Unknown describes
/// the bound that ran out.
struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<PathWitness> witness;
  std::string note;

  static Verdict accepted(PathWitness w) { return {VerdictKind::Accepted, std::move(w), ""}; }
  static Verdict rejected() { return {VerdictKind::Rejected, std::nullopt, ""}; }
  static Verdict unknown(std::string note) { return {VerdictKind::Unknown, std::nullopt, std::move(note)}; }
};

/// The layered product of an automaton with the positions of a fixed word.
/// Letter edges consume the next token and advance the position; epsilon
/// edges stay, so every cycle projects to an epsilon cycle of the automaton.
class RunGraph {
 public:
  struct Node {
    std::size_t state;
    std::size_t pos;
    friend auto operator<=>(const Node&, const Node&) = default;
  };

  RunGraph(const CounterAutomaton& a, const Word& w) : a_(&a), w_(w) {
    for (const Token& t : w)
      if (!a.alphabet.contains(t))
        throw std::invalid_argument("token \"" + to_string(t) + "\" not in alphabet of rank " +
                                    std::to_string(a.alphabet.rank()));
    initial_ = a.state_index(a.initial);
    final_.assign(a.states.size(), 0);
    for (const auto& f : a.finals) final_[a.state_index(f)] = 1;
    out_edges_.assign(a.states.size(), {});
    for (std::size_t i = 0; i < a.edges.size(); ++i)
      out_edges_[a.state_index(a.edges[i].from)].push_back(i);
  }

  Node source() const { return {initial_, 0}; }
  bool is_sink(Node n) const { return n.pos == w_.size() && final_[n.state] != 0; }
  std::size_t word_length() const { return w_.size(); }
  const CounterAutomaton& automaton() const { return *a_; }

  /// Lifted out-edges of a node as (automaton edge index, successor node),
  /// in ascending edge order.
  std::vector<std::pair<std::size_t, Node>> out(Node n) const {
    std::vector<std::pair<std::size_t, Node>> res;
    for (std::size_t i : out_edges_[n.state]) {
      const Edge& e = a_->edges[i];
      std::size_t to = a_->state_index(e.to);
      if (!e.letter) {
        res.emplace_back(i, Node{to, n.pos});
      } else if (n.pos < w_.size() && *e.letter == w_[n.pos]) {
        res.emplace_back(i, Node{to, n.pos + 1});
      }
    }
    return res;
  }

 private:
  const CounterAutomaton* a_;
  Word w_;
  std::size_t initial_ = 0;
  std::vector<char> final_;
  std::vector<std::vector<std::size_t>> out_edges_;
};

namespace detail {

// Parent links for certificate reconstruction in the forward-propagation
// engines. The key identifies a reached (node, vector[, eps-budget]) pair.
template <typename Key>
inline PathWitness rebuild_path(const CounterAutomaton& a, const std::map<Key, std::pair<Key, std::size_t>>& parent,
                                Key key) {
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<std::size_t> edges;
  while (true) {
    const auto& [prev, edge] = parent.at(key);
    if (edge == kRoot) break;
    edges.push_back(edge);
    key = prev;
  }
  std::reverse(edges.begin(), edges.end());
  return make_path(a, a.initial, std::move(edges));
}

}  // namespace detail

/// Decides acceptance of w.
///
/// When the epsilon subgraph has no cycle with nonzero vector, the set of
/// reachable (run-graph node, accumulated vector) pairs is finite, so
/// memoized forward propagation is exact: Accepted with a certificate, or
/// Rejected. Every construction in this library produces automata in that
/// regime.
///
/// Otherwise the same propagation runs inside the given limits and only
/// Accepted or Unknown is possible; Rejected is never guessed.
inline Verdict accept(const CounterAutomaton& a, const Word& w, const SearchLimits& limits = {}) {
  RunGraph rg(a, w);
  const auto cls = epsilon_cycle_class(a);
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

  if (cls != EpsilonCycleClass::NonzeroVectorCycle) {
    using Key = std::tuple<std::size_t, std::size_t, CounterVector>;
    std::map<Key, std::pair<Key, std::size_t>> parent;
    std::deque<Key> todo;
    Key root{rg.source().state, rg.source().pos, zero_vector(static_cast<std::size_t>(a.counters))};
    parent.emplace(root, std::make_pair(root, kRoot));
    todo.push_back(root);
    while (!todo.empty()) {
      Key cur = todo.front();
      todo.pop_front();
      const auto& [state, pos, vec] = cur;
      RunGraph::Node node{state, pos};
      if (rg.is_sink(node) && is_zero_vector(vec))
        return Verdict::accepted(detail::rebuild_path(a, parent, cur));
      for (const auto& [edge, nxt] : rg.out(node)) {
        Key key{nxt.state, nxt.pos, vec_add(vec, a.edges[edge].vector)};
        if (parent.emplace(key, std::make_pair(cur, edge)).second) todo.push_back(key);
      }
    }
    return Verdict::rejected();
  }

  const std::int64_t eps_limit = limits.resolve_epsilon_steps(a);
  using Key = std::tuple<std::size_t, std::size_t, CounterVector, std::int64_t>;
  std::map<Key, std::pair<Key, std::size_t>> parent;
  std::deque<Key> todo;
  Key root{rg.source().state, rg.source().pos, zero_vector(static_cast<std::size_t>(a.counters)), 0};
  parent.emplace(root, std::make_pair(root, kRoot));
  todo.push_back(root);
  while (!todo.empty()) {
    Key cur = todo.front();
    todo.pop_front();
    const auto& [state, pos, vec, eps_used] = cur;
    RunGraph::Node node{state, pos};
    if (rg.is_sink(node) && is_zero_vector(vec))
      return Verdict::accepted(detail::rebuild_path(a, parent, cur));
    for (const auto& [edge, nxt] : rg.out(node)) {
      const bool is_eps = nxt.pos == pos;
      if (is_eps && eps_used >= eps_limit) continue;
      CounterVector nv = vec_add(vec, a.edges[edge].vector);
      if (vec_max_norm(nv) > limits.counter_bound) continue;
      Key key{nxt.state, nxt.pos, std::move(nv), is_eps ? eps_used + 1 : 0};
      if (parent.emplace(key, std::make_pair(cur, edge)).second) todo.push_back(key);
    }
  }
  return Verdict::unknown("bounded search exhausted (counter bound " + std::to_string(limits.counter_bound) +
                          ", epsilon steps " + std::to_string(eps_limit) + " per position)");
}

/// Path length below which enumeration of all paths reading w is provably
/// exhaustive when the automaton has no epsilon cycles: |w| letter edges plus
/// an epsilon run of at most |states|-1 edges around each position.
inline std::int64_t brute_force_exhaustive_bound(const CounterAutomaton& a, const Word& w) {
  auto s = static_cast<std::int64_t>(a.states.size());
  auto len = static_cast<std::int64_t>(w.size());
  return len + (len + 1) * (s > 0 ? s - 1 : 0);
}

/// Independent oracle: plain depth-first enumeration of every path of length
/// at most max_path_len from the initial state, with no memoization shared
/// with accept(). Rejected only when the enumeration is provably exhaustive.
inline Verdict brute_force_accept(const CounterAutomaton& a, const Word& w, std::int64_t max_path_len) {
  for (const Token& t : w)
    if (!a.alphabet.contains(t))
      throw std::invalid_argument("token \"" + to_string(t) + "\" not in alphabet of rank " +
                                  std::to_string(a.alphabet.rank()));

  std::vector<std::vector<std::size_t>> out(a.states.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) out[a.state_index(a.edges[i].from)].push_back(i);
  std::vector<char> final_state(a.states.size(), 0);
  for (const auto& f : a.finals) final_state[a.state_index(f)] = 1;

  std::vector<std::size_t> stack;
  std::optional<std::vector<std::size_t>> found;

  auto dfs = [&](auto&& self, std::size_t state, std::size_t pos, const CounterVector& vec) -> void {
    if (found) return;
    if (pos == w.size() && final_state[state] && is_zero_vector(vec)) {
      found = stack;
      return;
    }
    if (static_cast<std::int64_t>(stack.size()) >= max_path_len) return;
    for (std::size_t e : out[state]) {
      const Edge& ed = a.edges[e];
      std::size_t npos;
      if (!ed.letter) {
        npos = pos;
      } else if (pos < w.size() && *ed.letter == w[pos]) {
        npos = pos + 1;
      } else {
        continue;
      }
      stack.push_back(e);
      self(self, a.state_index(ed.to), npos, vec_add(vec, ed.vector));
      stack.pop_back();
      if (found) return;
    }
  };
  dfs(dfs, a.state_index(a.initial), 0, zero_vector(static_cast<std::size_t>(a.counters)));

  if (found) return Verdict::accepted(make_path(a, a.initial, std::move(*found)));
  if (epsilon_cycle_class(a) == EpsilonCycleClass::NoEpsilonCycle &&
      max_path_len >= brute_force_exhaustive_bound(a, w))
    return Verdict::rejected();
  return Verdict::unknown("enumeration up to length " + std::to_string(max_path_len) + " is not exhaustive here");
}

/// All accepting paths for w within the limits, in lexicographic order of
/// their edge sequences, deduplicated. Complete whenever epsilon runs within
/// the limits cover every accepting path (always the case for epsilon-acyclic
/// automata under the defaults).
inline std::vector<PathWitness> enumerate_accepting_paths(const CounterAutomaton& a, const Word& w,
                                                          const SearchLimits& limits = {}) {
  RunGraph rg(a, w);
  const std::int64_t eps_limit = limits.resolve_epsilon_steps(a);

  std::vector<PathWitness> result;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> stack;

  auto dfs = [&](auto&& self, RunGraph::Node node, const CounterVector& vec, std::int64_t eps_used) -> void {
    if (rg.is_sink(node) && is_zero_vector(vec) && seen.insert(stack).second)
      result.push_back(make_path(a, a.initial, stack));
    for (const auto& [edge, nxt] : rg.out(node)) {
      const bool is_eps = nxt.pos == node.pos;
      if (is_eps && eps_used >= eps_limit) continue;
      CounterVector nv = vec_add(vec, a.edges[edge].vector);
      if (vec_max_norm(nv) > limits.counter_bound) continue;
      stack.push_back(edge);
      self(self, nxt, nv, is_eps ? eps_used + 1 : 0);
      stack.pop_back();
    }
  };
  dfs(dfs, rg.source(), zero_vector(static_cast<std::size_t>(a.counters)), 0);
  return result;
}

}  // namespace zca
