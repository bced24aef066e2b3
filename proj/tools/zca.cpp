// zca: blind Z^m counter automata on the command line. Builds the canonical
// word-problem and chain automata, intersects, brings candidates into
// structured normal form, decides acceptance (with an independent brute-force
// oracle), checks grid coverage of affine translates, and refutes undersized
// word-problem candidates by synthesizing witness words.
//
// Exit codes: 0 success / positive result, 1 negative result (Rejected,
// not-refuted, nonzero exponent), 2 usage or input error, 3 Unknown verdict.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zca/abelian.hpp"
#include "zca/io.hpp"

namespace {

void emit_automaton(const zca::CounterAutomaton& a, const std::string& out_path) {
  if (out_path.empty())
    std::cout << zca::automaton_to_json(a).dump(2) << "\n";
  else
    zca::save_automaton(a, out_path);
}

int run_accept(const std::string& path, const std::string& word_text, std::int64_t counter_bound,
               std::optional<std::int64_t> eps_steps, bool oracle) {
  auto a = zca::load_automaton(path);
  auto w = zca::parse_word(word_text);
  zca::SearchLimits limits;
  limits.counter_bound = counter_bound;
  if (eps_steps) limits.epsilon_steps = *eps_steps;
  auto v = zca::accept(a, w, limits);
  std::cout << zca::format_verdict_report(w, v);
  if (oracle) {
    auto bv = zca::brute_force_accept(a, w, zca::brute_force_exhaustive_bound(a, w));
    std::cout << "oracle: " << zca::to_string(bv.kind) << "\n";
    const bool contradiction =
        (v.kind == zca::VerdictKind::Accepted && bv.kind == zca::VerdictKind::Rejected) ||
        (v.kind == zca::VerdictKind::Rejected && bv.kind == zca::VerdictKind::Accepted);
    if (contradiction) {
      std::cerr << "error: engine and brute-force oracle disagree\n";
      return 2;
    }
  }
  switch (v.kind) {
    case zca::VerdictKind::Accepted: return 0;
    case zca::VerdictKind::Rejected: return 1;
    case zca::VerdictKind::Unknown: return 3;
  }
  return 2;
}

int run_enumerate(const std::string& path, const std::string& word_text, std::int64_t counter_bound,
                  std::optional<std::int64_t> eps_steps) {
  auto a = zca::load_automaton(path);
  auto w = zca::parse_word(word_text);
  zca::SearchLimits limits;
  limits.counter_bound = counter_bound;
  if (eps_steps) limits.epsilon_steps = *eps_steps;
  auto paths = zca::enumerate_accepting_paths(a, w, limits);
  std::cout << "paths: " << paths.size() << "\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    std::cout << "path " << (i + 1) << ": edges=" << zca::format_index_list(paths[i].edges)
              << " word=" << zca::format_word_or_epsilon(paths[i].word) << "\n";
  return 0;
}

int run_refute(const std::string& path, int rank, std::int64_t box, int circuits, const std::string& dot_path) {
  auto a = zca::load_automaton(path);
  zca::RefuteConfig config;
  config.box = box;
  config.circuit_bound = circuits;
  auto res = zca::refute(a, rank, config);
  std::cout << zca::format_refute_report(res, rank);
  if (!dot_path.empty()) {
    std::set<std::size_t> highlight;
    if (res.refutation)
      highlight.insert(res.refutation->synthesis.added_edges.begin(), res.refutation->synthesis.added_edges.end());
    std::ofstream out(dot_path);
    if (!out) throw zca::ParseError("cannot open \"" + dot_path + "\" for writing");
    out << zca::export_dot(res.structured, highlight);
  }
  return res.refutation ? 0 : 1;
}

int run_abelian(const std::string& word_text, int rank) {
  auto w = zca::parse_word(word_text);
  auto e = zca::exponent_vector(w, rank);
  std::cout << "word: " << zca::format_word_or_epsilon(w) << "\n";
  std::cout << "exponent: " << zca::format_vec(e) << "\n";
  auto form = zca::parse_canonical_form(w, rank);
  if (form) {
    std::cout << "canonical-u: " << zca::format_vec(form->u) << "\n";
    std::cout << "canonical-v: " << zca::format_vec(form->v) << "\n";
  } else {
    std::cout << "canonical: no\n";
  }
  return zca::is_zero_vector(e) ? 0 : 1;
}

int run_planes_check(const std::string& path) {
  auto f = zca::load_translates(path);
  auto rep = zca::grid_coverage_check(f.n, f.translates);
  std::cout << "n: " << f.n << "\n";
  std::cout << "r: " << f.translates.size() << "\n";
  std::cout << zca::format_grid_report(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blind Z^m counter automata: constructions, acceptance, grid coverage, refutation"};
  app.require_subcommand(1);

  int n = 1;
  std::string out_path;
  auto* build_canonical = app.add_subcommand("build-canonical", "canonical Z^n word-problem automaton");
  build_canonical->add_option("n", n, "rank of the free abelian group")->required();
  build_canonical->add_option("-o,--out", out_path, "write to file instead of stdout");

  auto* build_chain = app.add_subcommand("build-chain", "chain NFA for x1*...xn*X1*...Xn*");
  build_chain->add_option("n", n, "rank")->required();
  build_chain->add_option("-o,--out", out_path, "write to file instead of stdout");

  std::string file_a, file_b;
  auto* product_cmd = app.add_subcommand("product", "intersection product of an NFA with a counter automaton");
  product_cmd->add_option("A1", file_a, "finite-state factor (zero counters)")->required();
  product_cmd->add_option("A2", file_b, "counter-automaton factor")->required();
  product_cmd->add_option("-o,--out", out_path, "write to file instead of stdout");

  auto* structure_cmd = app.add_subcommand("structure", "structured normal form of a word-problem candidate");
  structure_cmd->add_option("n", n, "rank")->required();
  structure_cmd->add_option("A2", file_b, "candidate accepting the Z^n word problem")->required();
  structure_cmd->add_option("-o,--out", out_path, "write to file instead of stdout");

  std::string word_text;
  std::int64_t counter_bound = 64;
  std::optional<std::int64_t> eps_steps;
  bool oracle = false;
  auto* accept_cmd = app.add_subcommand("accept", "decide acceptance of a word");
  accept_cmd->add_option("A", file_a, "automaton file")->required();
  accept_cmd->add_option("word", word_text, "whitespace-separated tokens, e.g. \"x1 x2 X1 X2\"")->required();
  accept_cmd->add_option("--counter-bound", counter_bound, "max-norm bound for the fallback engine");
  accept_cmd->add_option("--eps-steps", eps_steps, "epsilon transitions allowed per position");
  accept_cmd->add_flag("--oracle", oracle, "cross-check against the brute-force oracle");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list accepting paths for a word");
  enumerate_cmd->add_option("A", file_a, "automaton file")->required();
  enumerate_cmd->add_option("word", word_text, "word to enumerate")->required();
  enumerate_cmd->add_option("--counter-bound", counter_bound, "max-norm bound");
  enumerate_cmd->add_option("--eps-steps", eps_steps, "epsilon transitions allowed per position");

  int rank = 2;
  std::int64_t box = 3;
  int circuits = 2;
  std::string dot_path;
  auto* refute_cmd = app.add_subcommand("refute", "synthesize a witness against an undersized candidate");
  refute_cmd->add_option("A", file_a, "candidate automaton (raw or structured)")->required();
  refute_cmd->add_option("--rank", rank, "rank n of the word problem")->required();
  refute_cmd->add_option("--box", box, "canonical-word box bound for minimal paths");
  refute_cmd->add_option("--circuits", circuits, "insertion bound per circuit");
  refute_cmd->add_option("--dot", dot_path, "write the surgered automaton as DOT, witness circuits highlighted");

  auto* planes_cmd = app.add_subcommand("planes-check", "grid coverage of affine translates");
  planes_cmd->add_option("FILE", file_a, "translate file")->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz DOT export");
  dot_cmd->add_option("A", file_a, "automaton file")->required();

  auto* abelian_cmd = app.add_subcommand("abelian", "exponent vector and canonical form of a word");
  abelian_cmd->add_option("word", word_text, "word to abelianize")->required();
  abelian_cmd->add_option("--rank", rank, "rank n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(build_canonical)) {
      emit_automaton(zca::canonical_word_problem(n), out_path);
      return 0;
    }
    if (app.got_subcommand(build_chain)) {
      emit_automaton(zca::regex_chain_nfa(n), out_path);
      return 0;
    }
    if (app.got_subcommand(product_cmd)) {
      emit_automaton(zca::product(zca::load_automaton(file_a), zca::load_automaton(file_b)), out_path);
      return 0;
    }
    if (app.got_subcommand(structure_cmd)) {
      auto b = zca::structured_automaton(n, zca::load_automaton(file_b));
      auto rep = zca::verify_structure(b);
      if (!rep.ok()) {
        for (const auto& v : rep.violations) std::cerr << "structure violation: " << v << "\n";
        return 2;
      }
      emit_automaton(b, out_path);
      return 0;
    }
    if (app.got_subcommand(accept_cmd)) return run_accept(file_a, word_text, counter_bound, eps_steps, oracle);
    if (app.got_subcommand(enumerate_cmd)) return run_enumerate(file_a, word_text, counter_bound, eps_steps);
    if (app.got_subcommand(refute_cmd)) return run_refute(file_a, rank, box, circuits, dot_path);
    if (app.got_subcommand(planes_cmd)) return run_planes_check(file_a);
    if (app.got_subcommand(dot_cmd)) {
      std::cout << zca::export_dot(zca::load_automaton(file_a));
      return 0;
    }
    if (app.got_subcommand(abelian_cmd)) return run_abelian(word_text, rank);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
