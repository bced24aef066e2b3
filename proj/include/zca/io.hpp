#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "zca/acceptance.hpp"
#include "zca/automaton.hpp"
#include "zca/lattice.hpp"
#include "zca/rational.hpp"
#include "zca/refute.hpp"

namespace zca {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The documented automaton file schema, in field order:
/// {"counters", "rank", "states", "initial", "finals", "tags", "edges"};
/// each edge {"from", "to", "vector", "letter"}, letter null for epsilon.
inline nlohmann::ordered_json automaton_to_json(const CounterAutomaton& a) {
  nlohmann::ordered_json j;
  j["counters"] = a.counters;
  j["rank"] = a.alphabet.rank();
  j["states"] = a.states;
  j["initial"] = a.initial;
  j["finals"] = a.finals;
  nlohmann::ordered_json tags = nlohmann::ordered_json::object();
  for (const auto& [s, t] : a.tags) tags[s] = to_string(t);
  j["tags"] = tags;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const Edge& e : a.edges) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["vector"] = e.vector;
    if (e.letter)
      je["letter"] = to_string(*e.letter);
    else
      je["letter"] = nullptr;
    edges.push_back(std::move(je));
  }
  j["edges"] = edges;
  return j;
}

inline CounterAutomaton automaton_from_json(const nlohmann::json& j) {
  auto require = [&j](const char* field) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(field))
      throw ParseError(std::string("missing field \"") + field + "\"");
    return j.at(field);
  };

  constexpr std::int64_t kMaxDim = 1 << 20;
  CounterAutomaton a;
  if (!require("counters").is_number_integer() || j["counters"].get<std::int64_t>() < 0 ||
      j["counters"].get<std::int64_t>() > kMaxDim)
    throw ParseError("field \"counters\" must be a non-negative integer");
  a.counters = static_cast<int>(j["counters"].get<std::int64_t>());
  if (!require("rank").is_number_integer() || j["rank"].get<std::int64_t>() < 1 ||
      j["rank"].get<std::int64_t>() > kMaxDim)
    throw ParseError("field \"rank\" must be a positive integer");
  a.alphabet = Alphabet(static_cast<int>(j["rank"].get<std::int64_t>()));

  if (!require("states").is_array()) throw ParseError("field \"states\" must be an array of state ids");
  for (const auto& s : j["states"]) {
    if (!s.is_string()) throw ParseError("field \"states\" must contain strings");
    a.states.push_back(s.get<std::string>());
  }
  if (!require("initial").is_string()) throw ParseError("field \"initial\" must be a state id");
  a.initial = j["initial"].get<std::string>();
  if (!require("finals").is_array()) throw ParseError("field \"finals\" must be an array of state ids");
  for (const auto& s : j["finals"]) {
    if (!s.is_string()) throw ParseError("field \"finals\" must contain strings");
    a.finals.push_back(s.get<std::string>());
  }

  if (j.contains("tags")) {
    if (!j["tags"].is_object()) throw ParseError("field \"tags\" must be an object");
    for (const auto& [s, t] : j["tags"].items()) {
      if (!t.is_string()) throw ParseError("tag for \"" + s + "\" must be a token string");
      auto tok = parse_token(t.get<std::string>());
      if (!tok) throw ParseError("tag for \"" + s + "\": bad token \"" + t.get<std::string>() + "\"");
      a.tags[s] = *tok;
    }
  }

  if (!require("edges").is_array()) throw ParseError("field \"edges\" must be an array");
  std::size_t idx = 0;
  for (const auto& je : j["edges"]) {
    const std::string loc = "edge " + std::to_string(idx);
    if (!je.is_object()) throw ParseError(loc + ": must be an object");
    Edge e;
    if (!je.contains("from") || !je["from"].is_string()) throw ParseError(loc + ": missing string field \"from\"");
    if (!je.contains("to") || !je["to"].is_string()) throw ParseError(loc + ": missing string field \"to\"");
    e.from = je["from"].get<std::string>();
    e.to = je["to"].get<std::string>();
    if (!je.contains("vector") || !je["vector"].is_array())
      throw ParseError(loc + ": missing array field \"vector\"");
    for (const auto& x : je["vector"]) {
      if (!x.is_number_integer()) throw ParseError(loc + ": \"vector\" entries must be integers");
      e.vector.push_back(x.get<std::int64_t>());
    }
    if (!je.contains("letter")) throw ParseError(loc + ": missing field \"letter\" (token string or null)");
    if (je["letter"].is_null()) {
      e.letter = std::nullopt;
    } else if (je["letter"].is_string()) {
      auto tok = parse_token(je["letter"].get<std::string>());
      if (!tok) throw ParseError(loc + ": bad token \"" + je["letter"].get<std::string>() + "\"");
      e.letter = *tok;
    } else {
      throw ParseError(loc + ": \"letter\" must be a token string or null");
    }
    a.edges.push_back(std::move(e));
    ++idx;
  }
  return a;
}

inline void save_automaton(const CounterAutomaton& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open \"" + path.string() + "\" for writing");
  out << automaton_to_json(a).dump(2) << "\n";
}

/// Parse + validate; error messages carry the field or edge location.
inline CounterAutomaton load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path.string() + "\"");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  CounterAutomaton a = automaton_from_json(j);
  auto rep = validate(a);
  if (!rep.ok()) {
    std::string msg = path.string() + ": validation failed:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ParseError(msg);
  }
  return a;
}

/// Translate file: {"n": int, "translates": [{"base": ["p/q", ...],
/// "span": [["p/q", ...], ...]}]}. Rationals may be strings or plain ints.
struct TranslateFile {
  int n = 0;
  std::vector<AffineTranslate> translates;
};

inline TranslateFile load_translates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path.string() + "\"");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  auto rat = [](const nlohmann::json& x, const std::string& loc) -> Rational {
    if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
    if (x.is_string()) {
      auto r = Rational::parse(x.get<std::string>());
      if (r) return *r;
    }
    throw ParseError(loc + ": expected a rational \"p/q\" string or integer");
  };
  TranslateFile f;
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 1 ||
      j["n"].get<std::int64_t>() > (1 << 10))
    throw ParseError("field \"n\" must be a positive integer");
  f.n = static_cast<int>(j["n"].get<std::int64_t>());
  if (!j.contains("translates") || !j["translates"].is_array())
    throw ParseError("field \"translates\" must be an array");
  std::size_t ti = 0;
  for (const auto& jt : j["translates"]) {
    const std::string loc = "translate " + std::to_string(ti);
    AffineTranslate t;
    if (!jt.is_object() || !jt.contains("base") || !jt["base"].is_array())
      throw ParseError(loc + ": missing array field \"base\"");
    for (const auto& x : jt["base"]) t.base.push_back(rat(x, loc + " base"));
    if (!jt.contains("span") || !jt["span"].is_array()) throw ParseError(loc + ": missing array field \"span\"");
    for (const auto& jv : jt["span"]) {
      if (!jv.is_array()) throw ParseError(loc + ": span vectors must be arrays");
      std::vector<Rational> v;
      for (const auto& x : jv) v.push_back(rat(x, loc + " span"));
      t.span.push_back(std::move(v));
    }
    f.translates.push_back(std::move(t));
    ++ti;
  }
  return f;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz export, one edge per line with label "v=(...); a" or
/// "v=(...); ε". Highlighted edges (by index) are drawn bold red.
inline std::string export_dot(const CounterAutomaton& a, const std::set<std::size_t>& highlight = {}) {
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  \"__start\" [shape=point, label=\"\"];\n";
  out << "  \"__start\" -> \"" << detail::dot_escape(a.initial) << "\";\n";
  for (const auto& s : a.states) {
    out << "  \"" << detail::dot_escape(s) << "\" [shape=" << (a.is_final(s) ? "doublecircle" : "circle");
    auto tag = a.tags.find(s);
    if (tag != a.tags.end()) out << ", xlabel=\"A(" << to_string(tag->second) << ")\"";
    out << "];\n";
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& e = a.edges[i];
    out << "  \"" << detail::dot_escape(e.from) << "\" -> \"" << detail::dot_escape(e.to) << "\" [label=\"v="
        << format_vec(e.vector) << "; " << (e.letter ? to_string(*e.letter) : "ε") << "\"";
    if (highlight.count(i)) out << ", color=red, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string format_index_list(const std::vector<std::size_t>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}

/// Stable line format shared by the CLI and golden tests.
inline std::string format_verdict_report(const Word& w, const Verdict& v) {
  std::ostringstream out;
  out << "verdict: " << to_string(v.kind) << "\n";
  out << "word: " << format_word_or_epsilon(w) << "\n";
  if (v.kind == VerdictKind::Accepted) {
    out << "path-edges: " << format_index_list(v.witness->edges) << "\n";
    out << "vector-sum: " << format_vec(v.witness->vector_sum) << "\n";
  }
  if (v.kind == VerdictKind::Unknown) out << "note: " << v.note << "\n";
  return out.str();
}

inline std::string format_refute_report(const RefuteResult& r, int n) {
  std::ostringstream out;
  out << "refuted: " << (r.refutation ? "true" : "false") << "\n";
  out << "counters: " << r.structured.counters << "\n";
  out << "rank: " << n << "\n";
  out << "minimal-paths-tried: " << r.minimal_paths_tried << "\n";
  if (!r.refutation) {
    out << "max-independent-set: " << r.max_independent << "\n";
    return out.str();
  }
  const auto& fam = r.refutation->family;
  const auto& syn = r.refutation->synthesis;
  out << "base-word: " << format_word_or_epsilon(fam.base.word) << "\n";
  out << "base-j: " << format_vec(fam.base_j) << "\n";
  for (std::size_t i = 0; i < fam.extensions.size(); ++i) {
    const auto& ext = fam.extensions[i];
    out << "extension " << (i + 1) << ": a=" << format_vec(ext.displacement) << "; s=" << format_vec(ext.s)
        << "; S=" << format_vec(ext.s_inv) << "; q-word=" << format_word_or_epsilon(ext.q.word) << "\n";
  }
  out << "alpha: " << format_vec(syn.alpha) << "\n";
  out << "witness: " << format_word_or_epsilon(syn.witness) << "\n";
  out << "u: " << format_vec(syn.u) << "\n";
  out << "v: " << format_vec(syn.v) << "\n";
  out << "witness-path-edges: " << format_index_list(syn.path.edges) << "\n";
  return out.str();
}

inline std::string format_grid_report(const GridCoverageReport& rep) {
  std::ostringstream out;
  out << "k: " << rep.k << "\n";
  out << "max-rank: " << rep.max_rank << "\n";
  for (std::size_t i = 0; i < rep.per_translate_counts.size(); ++i)
    out << "translate " << (i + 1) << ": rank " << rep.per_translate_ranks[i] << ", points "
        << rep.per_translate_counts[i] << "\n";
  out << "uncovered: " << format_vec(rep.uncovered_point) << "\n";
  return out.str();
}

}  // namespace zca
