#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zca/abelian.hpp"
#include "zca/acceptance.hpp"
#include "zca/constructions.hpp"
#include "zca/lattice.hpp"
#include "zca/path.hpp"

namespace zca {

/// All simple directed cycles, each reported once, anchored at its
/// lowest-indexed state. Enumeration restricts the stack to states at or
/// above the root (the usual Johnson-style canonicalization), with edges
/// taken in index order, so the output order is reproducible.
inline std::vector<Circuit> enumerate_simple_circuits(const CounterAutomaton& a) {
  std::vector<std::vector<std::size_t>> out(a.states.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) out[a.state_index(a.edges[i].from)].push_back(i);

  std::vector<Circuit> result;
  std::vector<std::size_t> edge_stack;
  std::vector<char> on_stack(a.states.size(), 0);

  auto dfs = [&](auto&& self, std::size_t root, std::size_t at) -> void {
    for (std::size_t e : out[at]) {
      std::size_t to = a.state_index(a.edges[e].to);
      if (to == root) {
        Circuit c;
        c.anchor = a.states[root];
        c.edges = edge_stack;
        c.edges.push_back(e);
        result.push_back(std::move(c));
        continue;
      }
      if (to < root || on_stack[to]) continue;
      on_stack[to] = 1;
      edge_stack.push_back(e);
      self(self, root, to);
      edge_stack.pop_back();
      on_stack[to] = 0;
    }
  };
  for (std::size_t root = 0; root < a.states.size(); ++root) {
    on_stack.assign(a.states.size(), 0);
    on_stack[root] = 1;
    dfs(dfs, root, root);
  }
  return result;
}

/// One extension q > p of the base path: q accepts w(j + a) for the recorded
/// displacement a, and the circuits of q \ p are split into the halves lying
/// over generator tags A(x_i) and inverse tags A(X_i), with their counter
/// sums s and S. Acceptance of both p and q forces s + S = 0.
struct Extension {
  PathWitness q;
  std::vector<std::int64_t> displacement;  // a, non-negative, length n
  std::vector<Circuit> x_half;             // circuit instances over A(x_1)..A(x_n)
  std::vector<Circuit> inv_half;           // circuit instances over A(X_1)..A(X_n)
  CounterVector s;                          // counter sum of x_half
  CounterVector s_inv;                      // counter sum of inv_half
};

/// A minimal accepting path p for w(j) together with n extensions whose
/// displacement vectors are linearly independent.
struct ExtensionFamily {
  PathWitness base;
  std::vector<std::int64_t> base_j;
  std::vector<Extension> extensions;
};

struct ExtensionSearchResult {
  std::optional<ExtensionFamily> family;
  std::size_t max_independent = 0;    // size of the independent set achieved
  std::vector<Extension> partial;     // the greedy set when no full family exists
};

/// Accepting paths for every canonical word w(j), j in {0..box}^n, that are
/// minimal in the circuit order: no other enumerated accepting path lies
/// strictly below them. Minimality is relative to this bounded enumeration.
/// Output is ordered by accepted word, then by edge sequence.
inline std::vector<PathWitness> minimal_accepting_paths(const CounterAutomaton& a, std::int64_t box,
                                                        const SearchLimits& limits = {}) {
  if (box < 0) throw std::invalid_argument("box bound must be non-negative");
  const int n = a.alphabet.rank();

  std::vector<PathWitness> all;
  std::vector<std::int64_t> j(static_cast<std::size_t>(n), 0);
  bool done = false;
  while (!done) {
    for (auto& p : enumerate_accepting_paths(a, canonical_word(j), limits)) all.push_back(std::move(p));
    std::size_t d = j.size();
    while (d > 0) {
      --d;
      if (j[d] < box) {
        ++j[d];
        std::fill(j.begin() + static_cast<std::ptrdiff_t>(d) + 1, j.end(), 0);
        break;
      }
      if (d == 0) done = true;
    }
  }

  std::vector<PathWitness> minimal;
  for (const auto& p : all) {
    bool is_min = true;
    for (const auto& q : all) {
      if (q.edges == p.edges) continue;
      if (path_less(a, q, p)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(p);
  }
  std::sort(minimal.begin(), minimal.end(), [](const PathWitness& x, const PathWitness& y) {
    if (x.word != y.word)
      return std::lexicographical_compare(x.word.begin(), x.word.end(), y.word.begin(), y.word.end());
    return x.edges < y.edges;
  });
  return minimal;
}

namespace detail {

// Tag of a circuit in a structured automaton; every state of a circuit
// carries the same tag (circuit locality), re-asserted here.
inline Token circuit_tag(const CounterAutomaton& a, const Circuit& c) {
  const auto states = circuit_states(a, c);
  const Token tag = a.tags.at(states.front());
  for (const auto& s : states)
    if (!(a.tags.at(s) == tag)) throw std::logic_error("circuit spans subautomata; structure verification missed it");
  return tag;
}

inline std::size_t letter_count(const CounterAutomaton& a, const Circuit& c) {
  std::size_t l = 0;
  for (std::size_t e : c.edges)
    if (a.edges[e].letter) ++l;
  return l;
}

}  // namespace detail

/// Breadth-first search for an extension family above p in a structured
/// automaton: paths q > p are generated by inserting simple circuits (each at
/// most circuit_bound times) at states the growing path visits, and a
/// candidate q qualifies when it is accepting and reads w(j + a) with a
/// componentwise within the box. Displacements are collected greedily, kept
/// linearly independent, until n of them are found.
inline ExtensionSearchResult find_extension_family(const CounterAutomaton& a, const PathWitness& p,
                                                   int circuit_bound, std::int64_t box,
                                                   std::size_t max_nodes = 1000000) {
  if (a.tags.empty()) throw std::invalid_argument("extension search requires a structured (tagged) automaton");
  const int n = a.alphabet.rank();
  if (!is_accepting_path(a, p)) throw std::invalid_argument("base path is not accepting");
  auto base_form = parse_canonical_form(p.word, n);
  if (!base_form || base_form->u != base_form->v)
    throw std::invalid_argument("base path does not accept a canonical word w(j)");

  const auto circuits = enumerate_simple_circuits(a);
  struct CircuitInfo {
    std::set<std::string> states;
    Token tag;
    std::size_t letters;
  };
  std::vector<CircuitInfo> info;
  info.reserve(circuits.size());
  for (const auto& c : circuits) {
    auto st = circuit_states(a, c);
    info.push_back({{st.begin(), st.end()}, detail::circuit_tag(a, c), detail::letter_count(a, c)});
  }

  struct Node {
    PathWitness path;
    std::map<std::size_t, int> use;            // circuit id -> insertions
    std::vector<std::int64_t> du, dv;          // letters added per block
    std::vector<std::pair<std::size_t, Circuit>> inserted;  // (circuit id, rotated instance)
  };

  std::deque<Node> queue;
  std::set<std::vector<std::size_t>> seen;
  queue.push_back({p, {}, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0),
                   std::vector<std::int64_t>(static_cast<std::size_t>(n), 0),
                   {}});
  seen.insert(p.edges);

  std::vector<Extension> chosen;
  std::vector<std::vector<std::int64_t>> chosen_disp;
  std::size_t expanded = 0;

  while (!queue.empty() && expanded < max_nodes) {
    Node node = std::move(queue.front());
    queue.pop_front();
    ++expanded;

    const bool is_root = node.inserted.empty();
    if (!is_root && is_zero_vector(node.path.vector_sum) && node.du == node.dv &&
        !std::all_of(node.du.begin(), node.du.end(), [](std::int64_t x) { return x == 0; })) {
      auto test = chosen_disp;
      test.push_back(node.du);
      if (is_independent(test)) {
        Extension ext;
        ext.q = node.path;
        ext.displacement = node.du;
        ext.s = zero_vector(static_cast<std::size_t>(a.counters));
        ext.s_inv = zero_vector(static_cast<std::size_t>(a.counters));
        for (const auto& [cid, inst] : node.inserted) {
          if (info[cid].tag.inverse) {
            ext.inv_half.push_back(inst);
            ext.s_inv = vec_add(ext.s_inv, circuit_vector(a, inst));
          } else {
            ext.x_half.push_back(inst);
            ext.s = vec_add(ext.s, circuit_vector(a, inst));
          }
        }
        if (!is_zero_vector(vec_add(ext.s, ext.s_inv)))
          throw std::logic_error("extension violates s + S = 0 despite accepting endpoints");
        chosen.push_back(std::move(ext));
        chosen_disp.push_back(node.du);
        if (chosen.size() == static_cast<std::size_t>(n)) {
          ExtensionFamily fam{p, base_form->u, std::move(chosen)};
          return {std::move(fam), static_cast<std::size_t>(n), {}};
        }
      }
    }

    // Expand: insert each circuit once more at the first visited state lying
    // on it. The attachment position never changes the displacement, so one
    // canonical position per (path, circuit) suffices.
    const auto visited = path_states(a, node.path);
    for (std::size_t cid = 0; cid < circuits.size(); ++cid) {
      auto used_it = node.use.find(cid);
      if (used_it != node.use.end() && used_it->second >= circuit_bound) continue;
      auto at = std::find_if(visited.begin(), visited.end(),
                             [&](const std::string& s) { return info[cid].states.count(s) > 0; });
      if (at == visited.end()) continue;

      auto du = node.du;
      auto dv = node.dv;
      const Token tag = info[cid].tag;
      auto& slot = tag.inverse ? dv[static_cast<std::size_t>(tag.index - 1)]
                               : du[static_cast<std::size_t>(tag.index - 1)];
      slot = checked_add(slot, static_cast<std::int64_t>(info[cid].letters));
      if (slot > box) continue;

      Circuit inst = rotate_circuit(a, circuits[cid], *at);
      PathWitness next = insert_circuit(a, node.path, inst);
      if (!seen.insert(next.edges).second) continue;
      auto use = node.use;
      use[cid] += 1;
      auto inserted = node.inserted;
      inserted.emplace_back(cid, std::move(inst));
      queue.push_back({std::move(next), std::move(use), std::move(du), std::move(dv), std::move(inserted)});
    }
  }
  return {std::nullopt, chosen.size(), std::move(chosen)};
}

/// The witness produced by path surgery, with its exponent blocks.
struct WitnessSynthesis {
  Word witness;
  PathWitness path;                    // the surgered accepting path r
  ExponentVector u, v;                 // block exponents of the witness; u != v
  std::vector<std::int64_t> alpha;     // dependence coefficients used
  std::vector<std::size_t> added_edges;  // edge indices inserted into the base path
};

/// Raised when path surgery cannot attach a circuit; refute() skips to the
/// next minimal path in that case.
class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Insert a circuit even when its anchor is not on the path yet, by rotating
// to any visited state on the circuit.
inline PathWitness insert_reanchored(const CounterAutomaton& a, const PathWitness& path, const Circuit& c,
                                     std::vector<std::size_t>& added) {
  const auto visited = path_states(a, path);
  const auto on_circuit = circuit_states(a, c);
  std::set<std::string> cs(on_circuit.begin(), on_circuit.end());
  auto at = std::find_if(visited.begin(), visited.end(), [&](const std::string& s) { return cs.count(s) > 0; });
  if (at == visited.end())
    throw SynthesisError("circuit to re-insert shares no state with the surgered path");
  added.insert(added.end(), c.edges.begin(), c.edges.end());
  return insert_circuit(a, path, rotate_circuit(a, c, *at));
}

}  // namespace detail

/// Path surgery: with alpha an integer dependence of the x-half counter sums
/// s_1..s_n, the base path gains alpha_i extra traversals of extension i's
/// x-half circuits when alpha_i > 0, and -alpha_i extra traversals of its
/// X-half circuits when alpha_i < 0. The two signs contribute the same
/// counter amount (S_i = -s_i), so the result is accepting, while the word
/// gains u = j + sum_{alpha_i>0} alpha_i a_i against
/// v = j + sum_{alpha_i<0} (-alpha_i) a_i; independence of the a_i makes
/// u != v, so the witness is outside the word problem.
inline WitnessSynthesis synthesize_witness(const CounterAutomaton& a, const ExtensionFamily& fam) {
  const int n = a.alphabet.rank();
  if (a.counters >= n)
    throw std::invalid_argument("witness synthesis requires counter count m < n (got m = " +
                                std::to_string(a.counters) + ", n = " + std::to_string(n) + ")");
  if (fam.extensions.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("extension family must contain exactly n extensions");

  std::vector<std::vector<std::int64_t>> sums;
  sums.reserve(fam.extensions.size());
  for (const auto& ext : fam.extensions) sums.push_back(ext.s);
  WitnessSynthesis out;
  out.alpha = integer_dependence(sums).coefficients;

  PathWitness r = fam.base;
  for (std::size_t i = 0; i < fam.extensions.size(); ++i) {
    const auto& ext = fam.extensions[i];
    if (out.alpha[i] > 0) {
      for (const Circuit& c : ext.x_half)
        for (std::int64_t t = 0; t < out.alpha[i]; ++t) r = detail::insert_reanchored(a, r, c, out.added_edges);
    } else if (out.alpha[i] < 0) {
      for (const Circuit& c : ext.inv_half)
        for (std::int64_t t = 0; t < -out.alpha[i]; ++t) r = detail::insert_reanchored(a, r, c, out.added_edges);
    }
  }

  out.u = fam.base_j;
  out.v = fam.base_j;
  for (std::size_t i = 0; i < fam.extensions.size(); ++i) {
    if (out.alpha[i] > 0)
      out.u = vec_add(out.u, vec_scale(fam.extensions[i].displacement, out.alpha[i]));
    else if (out.alpha[i] < 0)
      out.v = vec_add(out.v, vec_scale(fam.extensions[i].displacement, -out.alpha[i]));
  }

  if (!is_accepting_path(a, r)) throw std::logic_error("surgered path lost acceptance; dependence sums are wrong");
  auto form = parse_canonical_form(r.word, n);
  if (!form || form->u != out.u || form->v != out.v)
    throw std::logic_error("surgered word left canonical form; circuit tags are inconsistent");
  if (out.u == out.v)
    throw std::logic_error("witness has equal exponent blocks; displacements were not independent");

  out.witness = r.word;
  out.path = std::move(r);
  return out;
}

struct RefuteConfig {
  std::int64_t box = 3;
  int circuit_bound = 2;
  SearchLimits limits{};
  std::size_t max_search_nodes = 1000000;
};

struct RefuteTrace {
  ExtensionFamily family;
  WitnessSynthesis synthesis;
};

struct RefuteResult {
  CounterAutomaton structured;           // the candidate in structured normal form
  std::optional<RefuteTrace> refutation;
  std::size_t max_independent = 0;       // best independent set over all minimal paths
  std::size_t minimal_paths_tried = 0;
};

/// Refutation engine: given a candidate m-counter automaton with m < n that
/// claims to accept the Z^n word problem intersected with the canonical-order
/// language, produce a word the candidate accepts whose exponent vector is
/// nonzero. Untagged candidates are first brought into structured normal
/// form. Emitted witnesses are re-verified end to end; exhausting the bounds
/// yields not-refuted (the candidate may accept only a proper subset of the
/// language).
inline RefuteResult refute(const CounterAutomaton& candidate, int n, const RefuteConfig& config = {}) {
  if (n < 1) throw std::invalid_argument("rank n must be positive");
  if (candidate.alphabet.rank() != n)
    throw std::invalid_argument("candidate alphabet rank " + std::to_string(candidate.alphabet.rank()) +
                                " does not match n = " + std::to_string(n));

  RefuteResult res;
  if (candidate.tags.empty()) {
    res.structured = structured_automaton(n, candidate);
  } else {
    auto rep = verify_structure(candidate);
    if (!rep.ok())
      throw std::invalid_argument("tagged candidate fails structure verification: " + rep.violations.front());
    res.structured = candidate;
  }
  const CounterAutomaton& a = res.structured;
  if (a.counters >= n)
    throw std::invalid_argument("refute requires counter count m < n (got m = " + std::to_string(a.counters) +
                                ", n = " + std::to_string(n) + ")");

  for (const auto& p : minimal_accepting_paths(a, config.box, config.limits)) {
    ++res.minimal_paths_tried;
    auto search = find_extension_family(a, p, config.circuit_bound, config.box, config.max_search_nodes);
    res.max_independent = std::max(res.max_independent, search.max_independent);
    if (!search.family) continue;

    WitnessSynthesis syn;
    try {
      syn = synthesize_witness(a, *search.family);
    } catch (const SynthesisError&) {
      continue;  // re-anchoring failed; another minimal path may still work
    }

    // End-to-end verification through the engine and the abelian oracle.
    Verdict verdict = accept(a, syn.witness, config.limits);
    if (verdict.kind == VerdictKind::Rejected)
      throw std::logic_error("engine rejected a certified witness; engines disagree");
    if (is_zero_vector(exponent_vector(syn.witness, n)))
      throw std::logic_error("witness exponent vector is zero; synthesis invariant broken");

    res.refutation = RefuteTrace{std::move(*search.family), std::move(syn)};
    return res;
  }
  return res;
}

}  // namespace zca
