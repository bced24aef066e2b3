#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zca/automaton.hpp"
#include "zca/checked.hpp"
#include "zca/token.hpp"

namespace zca {

/// An explicit path through an automaton: the certificate format for
/// acceptance and the raw material for path surgery. Edges are indices into
/// the owning automaton's edge list, so embedding is checkable.
struct PathWitness {
  std::vector<std::size_t> edges;
  std::string start;
  std::string end;
  CounterVector vector_sum;
  Word word;  // concatenation of the non-epsilon letters in order

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

/// Builds a witness from an edge-index sequence, checking that consecutive
/// edges are endpoint-compatible. Throws std::invalid_argument otherwise.
inline PathWitness make_path(const CounterAutomaton& a, const std::string& start,
                             std::vector<std::size_t> edge_indices) {
  if (!a.has_state(start)) throw std::invalid_argument("path start \"" + start + "\" not in automaton");
  PathWitness p;
  p.start = start;
  p.end = start;
  p.vector_sum = zero_vector(static_cast<std::size_t>(a.counters));
  for (std::size_t idx : edge_indices) {
    if (idx >= a.edges.size())
      throw std::invalid_argument("path not embedded: edge index " + std::to_string(idx) + " out of range");
    const Edge& e = a.edges[idx];
    if (e.from != p.end)
      throw std::invalid_argument("path not embedded: edge " + std::to_string(idx) + " starts at \"" + e.from +
                                  "\", path is at \"" + p.end + "\"");
    p.end = e.to;
    p.vector_sum = vec_add(p.vector_sum, e.vector);
    if (e.letter) p.word.push_back(*e.letter);
  }
  p.edges = std::move(edge_indices);
  return p;
}

inline PathWitness empty_path(const CounterAutomaton& a, const std::string& at) {
  return make_path(a, at, {});
}

/// States visited in order: start, then the target of each edge. Length is
/// always edges.size() + 1.
inline std::vector<std::string> path_states(const CounterAutomaton& a, const PathWitness& p) {
  std::vector<std::string> st;
  st.reserve(p.edges.size() + 1);
  st.push_back(p.start);
  for (std::size_t idx : p.edges) st.push_back(a.edges.at(idx).to);
  return st;
}

/// True iff p runs from the initial state to a final state with zero counter
/// sum, i.e. its label is (identity, word). The witness is re-derived from the
/// automaton first; a witness that is not embedded in a, or whose stored
/// sums disagree with a recomputation, raises std::invalid_argument.
inline bool is_accepting_path(const CounterAutomaton& a, const PathWitness& p) {
  PathWitness fresh = make_path(a, p.start, p.edges);
  if (fresh.end != p.end || fresh.vector_sum != p.vector_sum || fresh.word != p.word)
    throw std::invalid_argument("path witness inconsistent with automaton");
  return p.start == a.initial && a.is_final(p.end) && is_zero_vector(p.vector_sum);
}

/// A circuit: a closed walk, recorded with the state it attaches at.
struct Circuit {
  std::string anchor;
  std::vector<std::size_t> edges;  // walk from anchor back to anchor

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// States on the circuit in walk order starting at the anchor.
inline std::vector<std::string> circuit_states(const CounterAutomaton& a, const Circuit& c) {
  std::vector<std::string> st;
  for (std::size_t idx : c.edges) st.push_back(a.edges.at(idx).from);
  return st;
}

inline CounterVector circuit_vector(const CounterAutomaton& a, const Circuit& c) {
  CounterVector v = zero_vector(static_cast<std::size_t>(a.counters));
  for (std::size_t idx : c.edges) v = vec_add(v, a.edges.at(idx).vector);
  return v;
}

inline Word circuit_word(const CounterAutomaton& a, const Circuit& c) {
  Word w;
  for (std::size_t idx : c.edges)
    if (a.edges.at(idx).letter) w.push_back(*a.edges.at(idx).letter);
  return w;
}

/// Rotates the closed walk so it starts (and anchors) at the given state,
/// which must lie on the circuit.
inline Circuit rotate_circuit(const CounterAutomaton& a, const Circuit& c, const std::string& anchor) {
  auto st = circuit_states(a, c);
  auto it = std::find(st.begin(), st.end(), anchor);
  if (it == st.end()) throw std::invalid_argument("state \"" + anchor + "\" not on circuit");
  std::size_t j = static_cast<std::size_t>(it - st.begin());
  Circuit r;
  r.anchor = anchor;
  r.edges.insert(r.edges.end(), c.edges.begin() + static_cast<std::ptrdiff_t>(j), c.edges.end());
  r.edges.insert(r.edges.end(), c.edges.begin(), c.edges.begin() + static_cast<std::ptrdiff_t>(j));
  return r;
}

/// Splices a circuit into a path at the first traversal of its anchor state.
inline PathWitness insert_circuit(const CounterAutomaton& a, const PathWitness& path, const Circuit& c) {
  auto st = path_states(a, path);
  auto it = std::find(st.begin(), st.end(), c.anchor);
  if (it == st.end())
    throw std::invalid_argument("circuit anchor \"" + c.anchor + "\" not visited by path");
  std::size_t pos = static_cast<std::size_t>(it - st.begin());
  std::vector<std::size_t> edges;
  edges.reserve(path.edges.size() + c.edges.size());
  edges.insert(edges.end(), path.edges.begin(), path.edges.begin() + static_cast<std::ptrdiff_t>(pos));
  edges.insert(edges.end(), c.edges.begin(), c.edges.end());
  edges.insert(edges.end(), path.edges.begin() + static_cast<std::ptrdiff_t>(pos), path.edges.end());
  return make_path(a, path.start, std::move(edges));
}

/// Inserts circuits left to right; each anchor must already be visited, so a
/// decomposition in attachment order replays cleanly.
inline PathWitness replay_with_circuits(const CounterAutomaton& a, const PathWitness& p,
                                        const std::vector<Circuit>& circuits) {
  PathWitness r = p;
  for (const Circuit& c : circuits) r = insert_circuit(a, r, c);
  return r;
}

namespace detail {

// Is a a subsequence of b?
inline bool word_subsequence(const Word& a, const Word& b) {
  std::size_t i = 0;
  for (const Token& t : b) {
    if (i < a.size() && a[i] == t) ++i;
  }
  return i == a.size();
}

}  // namespace detail

/// Witnesses the circuit order p < q ("q is obtained from p by adding
/// circuits"). Succeeds when
///   - the edge-multiset difference q \ p is nonempty and p is a sub-multiset
///     of q,
///   - the difference has balanced in/out degree at every state,
///   - every weak component of the difference shares a state with p's visited
///     set (nested circuits attach through other circuits inside the same
///     component),
///   - p's letter sequence is an order-respecting restriction of q's
///     (a subsequence), which in the structured normal form is exactly the
///     canonical-order condition forced by the state chain.
/// The returned circuits are simple cycles in attachment order: replaying p
/// with them inserted reproduces q's edge multiset, endpoints and vector sum.
/// Returns nullopt when p and q are not comparable.
inline std::optional<std::vector<Circuit>> circuit_decompose(const CounterAutomaton& a,
                                                             const PathWitness& q,
                                                             const PathWitness& p) {
  if (p.start != q.start || p.end != q.end) return std::nullopt;

  std::map<std::size_t, int> remaining;
  for (std::size_t e : q.edges) remaining[e]++;
  for (std::size_t e : p.edges) {
    auto it = remaining.find(e);
    if (it == remaining.end() || it->second == 0) return std::nullopt;  // p not a sub-multiset of q
    if (--it->second == 0) remaining.erase(it);
  }
  if (remaining.empty()) return std::nullopt;  // the order is strict

  std::map<std::string, std::int64_t> degree;
  for (const auto& [e, c] : remaining) {
    degree[a.edges.at(e).from] += c;
    degree[a.edges.at(e).to] -= c;
  }
  for (const auto& [s, d] : degree)
    if (d != 0) return std::nullopt;

  // Weak components of the difference, via union-find on state ids.
  std::map<std::string, std::string> parent;
  auto find_root = [&parent](std::string s) {
    while (parent[s] != s) {
      parent[s] = parent[parent[s]];
      s = parent[s];
    }
    return s;
  };
  for (const auto& [e, c] : remaining) {
    const Edge& ed = a.edges[e];
    if (!parent.count(ed.from)) parent[ed.from] = ed.from;
    if (!parent.count(ed.to)) parent[ed.to] = ed.to;
    parent[find_root(ed.from)] = find_root(ed.to);
  }
  auto visited_list = path_states(a, p);
  std::set<std::string> visited(visited_list.begin(), visited_list.end());
  std::map<std::string, bool> component_touches_p;
  for (const auto& [s, unused] : parent) component_touches_p[find_root(s)] = false;
  for (const auto& [s, unused] : parent)
    if (visited.count(s)) component_touches_p[find_root(s)] = true;
  for (const auto& [root, touches] : component_touches_p)
    if (!touches) return std::nullopt;

  if (!detail::word_subsequence(p.word, q.word)) return std::nullopt;

  // Peel simple cycles off the difference. Walks start at attachable states
  // (p's visited set first, then states of already-peeled cycles); on a
  // balanced multigraph a walk can only return to its start, extracting a
  // simple cycle every time a state repeats on the current walk.
  std::map<std::string, std::vector<std::size_t>> out_by_state;
  for (const auto& [e, c] : remaining)
    for (int i = 0; i < c; ++i) out_by_state[a.edges.at(e).from].push_back(e);
  for (auto& [s, v] : out_by_state) std::sort(v.begin(), v.end());

  std::vector<std::string> attach_order;  // first-visit order of p, grown by peeled cycles
  std::set<std::string> attach_seen;
  for (const auto& s : visited_list)
    if (attach_seen.insert(s).second) attach_order.push_back(s);

  std::size_t edges_left = 0;
  for (const auto& [e, c] : remaining) edges_left += static_cast<std::size_t>(c);

  std::vector<Circuit> peeled;
  while (edges_left > 0) {
    std::string start;
    for (const auto& s : attach_order) {
      auto it = out_by_state.find(s);
      if (it != out_by_state.end() && !it->second.empty()) {
        start = s;
        break;
      }
    }
    if (start.empty()) return std::nullopt;  // difference not attachable (ruled out by the component check)

    std::vector<std::string> walk{start};
    std::vector<std::size_t> walk_edges;
    std::map<std::string, std::size_t> pos_on_walk{{start, 0}};
    while (!walk_edges.empty() || !out_by_state[walk.back()].empty()) {
      std::string cur = walk.back();
      auto& outs = out_by_state[cur];
      if (outs.empty()) return std::nullopt;  // cannot happen on a balanced difference
      std::size_t e = outs.front();
      outs.erase(outs.begin());
      --edges_left;
      walk_edges.push_back(e);
      const std::string& nxt = a.edges[e].to;
      auto hit = pos_on_walk.find(nxt);
      if (hit != pos_on_walk.end()) {
        std::size_t at = hit->second;
        Circuit c;
        c.anchor = nxt;
        c.edges.assign(walk_edges.begin() + static_cast<std::ptrdiff_t>(at), walk_edges.end());
        for (std::size_t k = at + 1; k < walk.size(); ++k) pos_on_walk.erase(walk[k]);
        walk.resize(at + 1);
        walk_edges.resize(at);
        for (const auto& s : circuit_states(a, c))
          if (attach_seen.insert(s).second) attach_order.push_back(s);
        peeled.push_back(std::move(c));
      } else {
        walk.push_back(nxt);
        pos_on_walk[nxt] = walk.size() - 1;
      }
    }
  }

  // Order the cycles so each anchors at a state visited by p or by an earlier
  // cycle, rotating as needed; this is the order replay_with_circuits expects.
  std::vector<Circuit> ordered;
  std::set<std::string> available(visited.begin(), visited.end());
  std::vector<bool> used(peeled.size(), false);
  for (std::size_t round = 0; round < peeled.size(); ++round) {
    bool progressed = false;
    for (std::size_t i = 0; i < peeled.size(); ++i) {
      if (used[i]) continue;
      auto st = circuit_states(a, peeled[i]);
      auto it = std::find_if(st.begin(), st.end(),
                             [&available](const std::string& s) { return available.count(s) > 0; });
      if (it == st.end()) continue;
      ordered.push_back(rotate_circuit(a, peeled[i], *it));
      for (const auto& s : st) available.insert(s);
      used[i] = true;
      progressed = true;
      break;
    }
    if (!progressed) return std::nullopt;
  }
  return ordered;
}

/// The order on accepting paths: p < q iff q is p with circuits added.
inline bool path_less(const CounterAutomaton& a, const PathWitness& p, const PathWitness& q) {
  return circuit_decompose(a, q, p).has_value();
}

}  // namespace zca
