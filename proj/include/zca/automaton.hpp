#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zca/checked.hpp"
#include "zca/graph.hpp"
#include "zca/token.hpp"

namespace zca {

/// One transition: a counter increment v in Z^m paired with a letter or
/// epsilon (nullopt).
struct Edge {
  std::string from;
  std::string to;
  CounterVector vector;
  std::optional<Token> letter;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A Z^m-automaton: a finite directed multigraph with a distinguished initial
/// state, final states, and edges labeled by Z^m x (X^{±} ∪ {ε}).
/// m = 0 models a plain finite-state automaton.
///
/// Edges form a multiset; parallel edges, including identically labeled ones,
/// are kept apart because path counts matter downstream. The optional tags map
/// assigns states to the subautomata A(x_1)..A(X_n) of the structured normal
/// form; the tag value is the subautomaton's letter.
struct CounterAutomaton {
  int counters = 0;
  Alphabet alphabet{1};
  std::vector<std::string> states;  // insertion order, unique
  std::string initial;
  std::vector<std::string> finals;  // insertion order, unique
  std::vector<Edge> edges;
  std::map<std::string, Token> tags;

  bool has_state(const std::string& id) const {
    return std::find(states.begin(), states.end(), id) != states.end();
  }

  bool is_final(const std::string& id) const {
    return std::find(finals.begin(), finals.end(), id) != finals.end();
  }

  void add_state(const std::string& id) {
    if (!has_state(id)) states.push_back(id);
  }

  void add_final(const std::string& id) {
    if (!is_final(id)) finals.push_back(id);
  }

  std::size_t add_edge(Edge e) {
    edges.push_back(std::move(e));
    return edges.size() - 1;
  }

  /// Index of a state in the insertion order; throws for unknown ids.
  std::size_t state_index(const std::string& id) const {
    auto it = std::find(states.begin(), states.end(), id);
    if (it == states.end()) throw std::invalid_argument("unknown state \"" + id + "\"");
    return static_cast<std::size_t>(it - states.begin());
  }

  friend bool operator==(const CounterAutomaton&, const CounterAutomaton&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant and reports all violations with
/// locations, rather than stopping at the first.
inline ValidationReport validate(const CounterAutomaton& a) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  if (a.counters < 0) fail("counter count is negative");

  std::set<std::string> seen;
  for (const auto& s : a.states) {
    if (s.empty()) fail("empty state id");
    if (!seen.insert(s).second) fail("duplicate state \"" + s + "\"");
  }

  if (!seen.count(a.initial)) fail("dangling state: initial \"" + a.initial + "\" not in states");
  std::set<std::string> final_seen;
  for (const auto& f : a.finals) {
    if (!seen.count(f)) fail("dangling state: final \"" + f + "\" not in states");
    if (!final_seen.insert(f).second) fail("duplicate final \"" + f + "\"");
  }

  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& e = a.edges[i];
    const std::string loc = "edge " + std::to_string(i);
    if (!seen.count(e.from)) fail(loc + ": dangling state \"" + e.from + "\"");
    if (!seen.count(e.to)) fail(loc + ": dangling state \"" + e.to + "\"");
    if (e.vector.size() != static_cast<std::size_t>(a.counters))
      fail(loc + ": dimension mismatch, vector length " + std::to_string(e.vector.size()) +
           ", expected " + std::to_string(a.counters));
    if (e.letter && !a.alphabet.contains(*e.letter))
      fail(loc + ": unknown token \"" + to_string(*e.letter) + "\"");
  }

  for (const auto& [s, t] : a.tags) {
    if (!seen.count(s)) fail("tag on dangling state \"" + s + "\"");
    if (!a.alphabet.contains(t)) fail("tag with unknown token \"" + to_string(t) + "\"");
  }
  return rep;
}

enum class EpsilonCycleClass {
  NoEpsilonCycle,        // epsilon subgraph is acyclic
  ZeroVectorCyclesOnly,  // cycles exist but every one has zero net vector
  NonzeroVectorCycle,    // some epsilon cycle shifts the counters
};

inline const char* to_string(EpsilonCycleClass c) {
  switch (c) {
    case EpsilonCycleClass::NoEpsilonCycle: return "NoEpsilonCycle";
    case EpsilonCycleClass::ZeroVectorCyclesOnly: return "ZeroVectorCyclesOnly";
    case EpsilonCycleClass::NonzeroVectorCycle: return "NonzeroVectorCycle";
  }
  return "?";
}

/// Classifies the epsilon-edge subgraph. The zero-cycle test works per
/// strongly connected component: inside one SCC all cycles have zero vector
/// iff a potential phi with phi(to) - phi(from) = vector holds on every
/// intra-component edge, which a single BFS labeling certifies.
inline EpsilonCycleClass epsilon_cycle_class(const CounterAutomaton& a) {
  std::vector<std::pair<std::size_t, std::size_t>> eps;
  std::vector<std::size_t> eps_edge_index;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].letter) continue;
    eps.emplace_back(a.state_index(a.edges[i].from), a.state_index(a.edges[i].to));
    eps_edge_index.push_back(i);
  }
  const std::size_t n = a.states.size();
  if (detail::is_acyclic(n, eps)) return EpsilonCycleClass::NoEpsilonCycle;

  auto comp = detail::strongly_connected_components(n, eps);

  // Gather intra-component epsilon edges, indexed into eps/eps_edge_index.
  std::size_t comps = 0;
  for (auto c : comp) comps = std::max(comps, c + 1);
  std::vector<std::vector<std::size_t>> intra_by_comp(comps);
  for (std::size_t k = 0; k < eps.size(); ++k) {
    auto [u, v] = eps[k];
    if (comp[u] == comp[v]) intra_by_comp[comp[u]].push_back(k);
  }

  for (std::size_t c = 0; c < comps; ++c) {
    if (intra_by_comp[c].empty()) continue;
    // BFS potentials from the lowest-numbered node of the component. Within
    // one SCC the intra edges alone connect every node.
    std::vector<std::vector<std::size_t>> out(n);
    std::size_t root = n;
    for (std::size_t k : intra_by_comp[c]) {
      auto [u, v] = eps[k];
      out[u].push_back(k);
      root = std::min({root, u, v});
    }
    std::map<std::size_t, CounterVector> phi;
    phi[root] = zero_vector(static_cast<std::size_t>(a.counters));
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t u = queue[head];
      for (std::size_t k : out[u]) {
        std::size_t v = eps[k].second;
        CounterVector cand = vec_add(phi.at(u), a.edges[eps_edge_index[k]].vector);
        auto it = phi.find(v);
        if (it == phi.end()) {
          phi[v] = cand;
          queue.push_back(v);
        } else if (it->second != cand) {
          return EpsilonCycleClass::NonzeroVectorCycle;
        }
      }
    }
    for (std::size_t k : intra_by_comp[c]) {
      auto [u, v] = eps[k];
      if (phi.at(v) != vec_add(phi.at(u), a.edges[eps_edge_index[k]].vector))
        return EpsilonCycleClass::NonzeroVectorCycle;
    }
  }
  return EpsilonCycleClass::ZeroVectorCyclesOnly;
}

}  // namespace zca
