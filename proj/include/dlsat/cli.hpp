// ============================================================================
// dlsat/cli.hpp — command-line surface
// ============================================================================
//
// Subcommands: sat, subsumes, classify, si-sat, validate, domino-gen.
// Exit status: 0 = SAT / subsumption holds / valid
//              1 = UNSAT / does not hold / invalid
//              2 = usage or input error
//
// Everything is deterministic; --seed is accepted so scripted runs can pin
// an order explicitly, but no tie-breaking actually consumes randomness.
//
// ============================================================================

#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlsat/dot.hpp"
#include "dlsat/domino.hpp"
#include "dlsat/kb.hpp"
#include "dlsat/model_search.hpp"
#include "dlsat/parser.hpp"
#include "dlsat/printer.hpp"
#include "dlsat/si.hpp"
#include "dlsat/witness_io.hpp"

namespace dlsat {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void collect_atom_names(const ConceptStore& store, ConceptId c,
                               std::set<std::string>& out) {
  const ConceptNode& n = store.node(c);
  if (n.kind == ConceptKind::Atom) {
    out.insert(store.atom_name(n.sym));
    return;
  }
  std::vector<ConceptId> subs;
  direct_subconcepts(store, c, subs);
  for (ConceptId s : subs) collect_atom_names(store, s, out);
}

inline bool looks_like_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

// NAME-or-inline: defined names resolve to their definition; bare
// identifiers must at least occur in the knowledge base as an atom.
inline ConceptId resolve_concept(ConceptStore& store, const KbDocument& doc, bool have_kb,
                                 const std::string& text) {
  if (auto def = doc.lookup(text)) return *def;
  if (have_kb && looks_like_identifier(text) && text != "top" && text != "bottom") {
    std::set<std::string> atoms;
    for (const auto& [name, c] : doc.defines) collect_atom_names(store, c, atoms);
    for (const auto& [c, d] : doc.gcis) {
      collect_atom_names(store, c, atoms);
      collect_atom_names(store, d, atoms);
    }
    if (atoms.count(text) == 0)
      throw std::runtime_error("unknown concept name: " + text);
  }
  return parse_concept(store, text, &doc);
}

inline void report_non_simple(const ConceptStore& store, const KbDocument& doc,
                              const NonSimpleRoleError& e, std::ostream& err) {
  err << "error: number restriction on non-simple role: " << e.what() << "\n";
  for (const NrSite& site : doc.nr_sites)
    if (store.role_name(site.role.name) == e.role())
      err << "  number restriction on this role at line " << site.line << ", col " << site.col
          << "\n";
}

inline void print_classification(const ConceptStore& store, const Classification& c,
                                 std::ostream& out) {
  const std::size_t n = c.names.size();
  // group mutually-subsuming names into classes
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = i;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (c.subsumes[i][j] && c.subsumes[j][i]) {
        cls[i] = cls[j];
        break;
      }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (cls[i] == i) reps.push_back(i);
  auto strict_below = [&](std::size_t a, std::size_t b) {  // class a strictly subsumed by b
    return c.subsumes[a][b] && !c.subsumes[b][a];
  };
  auto direct_below = [&](std::size_t a, std::size_t b) {
    if (!strict_below(a, b)) return false;
    for (std::size_t m : reps)
      if (m != a && m != b && strict_below(a, m) && strict_below(m, b)) return false;
    return true;
  };
  auto class_label = [&](std::size_t rep) {
    std::string label;
    for (std::size_t i = 0; i < n; ++i)
      if (cls[i] == rep) label += (label.empty() ? "" : " = ") + c.names[i];
    return label;
  };
  std::function<void(std::size_t, int)> print_rec = [&](std::size_t rep, int indent) {
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << class_label(rep) << "\n";
    for (std::size_t child : reps)
      if (child != rep && direct_below(child, rep)) print_rec(child, indent + 1);
  };
  bool any_root = false;
  for (std::size_t rep : reps) {
    bool has_parent = false;
    for (std::size_t other : reps)
      if (other != rep && strict_below(rep, other)) has_parent = true;
    if (!has_parent) {
      print_rec(rep, 0);
      any_root = true;
    }
  }
  if (!any_root && !reps.empty()) print_rec(reps.front(), 0);
  (void)store;
}

struct TraceSink {
  std::vector<TraceEvent> events;
  TraceHook hook() {
    return [this](const TraceEvent& e) { events.push_back(e); };
  }
};

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"dlsat — tableau-based satisfiability, subsumption and classification for "
               "expressive description-logic concepts"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "pin tie-breaking order for reproducible traces");

  std::string kb_path, concept_text, sub_text, super_text, engine = "shiq";
  std::string trace_spec, witness_out, witness_in;
  int oracle_max = 0;
  std::uint32_t budget = 0;
  std::string tiles_csv, h_csv, v_csv, out_path;

  CLI::App* sat = app.add_subcommand("sat", "decide concept satisfiability w.r.t. a KB");
  sat->add_option("--kb", kb_path, "knowledge base file");
  sat->add_option("--concept", concept_text, "concept name or inline expression")->required();
  sat->add_option("--engine", engine, "shiq|si")->check(CLI::IsMember({"shiq", "si"}));
  sat->add_option("--trace", trace_spec, "dot:FILE — write a DOT trace of the run");
  sat->add_option("--witness-out", witness_out, "store the SAT witness as JSON");
  sat->add_option("--oracle-max-domain", oracle_max, "cross-check with bounded model search");

  CLI::App* si_sat = app.add_subcommand("si-sat", "decide an SI concept with the SI engine");
  si_sat->add_option("--kb", kb_path, "knowledge base file (transitive declarations only)");
  si_sat->add_option("--concept", concept_text, "concept name or inline expression")->required();
  si_sat->add_option("--trace", trace_spec, "dot:FILE");

  CLI::App* subsumes = app.add_subcommand("subsumes", "decide subsumption w.r.t. a KB");
  subsumes->add_option("--kb", kb_path, "knowledge base file");
  subsumes->add_option("--sub", sub_text, "candidate subsumee")->required();
  subsumes->add_option("--super", super_text, "candidate subsumer")->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "order the KB's defined concepts");
  classify_cmd->add_option("--kb", kb_path, "knowledge base file")->required();

  CLI::App* validate = app.add_subcommand("validate", "audit a stored SAT witness");
  validate->add_option("--witness", witness_in, "witness JSON file")->required();
  validate->add_option("--budget", budget, "unravelling depth budget (default: block distance x 1..3)");

  CLI::App* domino = app.add_subcommand("domino-gen", "emit grid axioms for a domino system");
  domino->add_option("--tiles", tiles_csv, "comma-separated tile names")->required();
  domino->add_option("--horizontal", h_csv, "comma-separated a:b compatible pairs");
  domino->add_option("--vertical", v_csv, "comma-separated a:b compatible pairs");
  domino->add_option("--out", out_path, "output file (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("dlsat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  (void)seed;  // all enumeration orders are already fixed

  ConceptStore store;
  KbDocument doc;
  bool have_kb = !kb_path.empty();
  try {
    if (have_kb) doc = parse_kb(store, detail::read_file(kb_path));

    std::string dot_path;
    if (!trace_spec.empty()) {
      if (trace_spec.rfind("dot:", 0) != 0) {
        err << "usage error: --trace expects dot:FILE\n";
        return 2;
      }
      dot_path = trace_spec.substr(4);
    }

    if (app.got_subcommand(sat) || app.got_subcommand(si_sat)) {
      if (app.got_subcommand(si_sat)) engine = "si";
      ConceptId query = detail::resolve_concept(store, doc, have_kb, concept_text);
      Terminology t = doc.to_terminology(store);
      detail::TraceSink sink;
      EngineOptions opts;
      if (!dot_path.empty()) opts.trace = sink.hook();

      if (engine == "si") {
        if (!doc.gcis.empty() || !doc.inclusions.empty()) {
          err << "error: the SI engine handles neither GCIs nor role hierarchies; "
                 "use --engine shiq\n";
          return 2;
        }
        SiVerdict v = si_decide_sat(store, nnf(store, query), doc.transitive, opts);
        out << (v.satisfiable ? "SAT" : "UNSAT") << "\n";
        if (!dot_path.empty()) {
          std::ofstream df(dot_path);
          df << (v.satisfiable ? emit_dot(store, v.witness, sink.events)
                               : "digraph si_completion {}\n");
        }
        return v.satisfiable ? 0 : 1;
      }

      ConceptId goal;
      RoleBox rbox;
      if (doc.gcis.empty()) {
        goal = nnf(store, query);
        rbox = t.rbox;
      } else {
        InternalisedProblem p = internalise_sat(store, t, query);
        goal = p.goal;
        rbox = p.rbox_u;
      }
      EngineVerdict v = decide_sat(store, goal, rbox, opts);
      out << (v.satisfiable ? "SAT" : "UNSAT") << "\n";
      if (oracle_max > 0) {
        ModelSearchOptions mopts;
        mopts.max_domain = static_cast<std::uint32_t>(oracle_max);
        auto model = find_model(store, nnf(store, query), t.rbox,
                                doc.gcis.empty() ? nullptr : &t, mopts);
        if (model)
          out << "oracle: model with " << model->size << " element(s)\n";
        else
          out << "oracle: no model up to domain size " << oracle_max << "\n";
        if (model && !v.satisfiable)
          err << "warning: oracle found a model but the engine answered UNSAT\n";
      }
      if (v.satisfiable && !witness_out.empty())
        save_witness(witness_out, store, goal, rbox, v.witness);
      if (!dot_path.empty()) {
        std::ofstream df(dot_path);
        df << (v.satisfiable ? emit_dot(store, v.witness, rbox) : "digraph completion {}\n");
      }
      return v.satisfiable ? 0 : 1;
    }

    if (app.got_subcommand(subsumes)) {
      ConceptId csub = detail::resolve_concept(store, doc, have_kb, sub_text);
      ConceptId csuper = detail::resolve_concept(store, doc, have_kb, super_text);
      Terminology t = doc.to_terminology(store);
      InternalisedProblem p = internalise_subsumes(store, t, csub, csuper);
      EngineVerdict v = decide_sat(store, p.goal, p.rbox_u);
      out << (v.satisfiable ? "NO" : "YES") << "\n";
      return v.satisfiable ? 1 : 0;
    }

    if (app.got_subcommand(classify_cmd)) {
      if (doc.defines.empty()) {
        err << "error: the knowledge base defines no concepts to classify\n";
        return 2;
      }
      Terminology t = doc.to_terminology(store);
      Classification c = classify(store, t, doc.defines);
      detail::print_classification(store, c, out);
      return 0;
    }

    if (app.got_subcommand(validate)) {
      StoredWitness w = load_witness(witness_in, store);
      ValidationReport rep = validate_completion_tree(store, w.tree, w.goal, w.rbox);
      if (!rep.ok) {
        out << "INVALID: " << rep.message;
        if (rep.node != kNoNode) out << " (node " << rep.node << ")";
        out << "\n";
        return 1;
      }
      std::vector<std::uint32_t> budgets;
      if (budget > 0) {
        budgets.push_back(budget);
      } else if (auto bd = block_distance(w.tree)) {
        budgets = {*bd, 2 * *bd, 3 * *bd};
      } else {
        std::uint32_t height = 0;
        for (const TreeNode& n : w.tree.nodes) height = std::max(height, n.depth);
        budgets = {height};
      }
      for (std::uint32_t b : budgets) {
        UnravelResult ur = unravel_witness(store, w.tree, w.goal, w.rbox, b);
        TableauReport tr = validate_tableau(store, ur.structure, w.goal, w.rbox,
                                            TableauMode::Shiq, ur.frontier);
        if (!tr.ok) {
          out << "INVALID: unravelling at budget " << b << ": " << tr.violations.front() << "\n";
          return 1;
        }
      }
      out << "VALID\n";
      return 0;
    }

    if (app.got_subcommand(domino)) {
      DominoSystem sys;
      sys.tiles = detail::split(tiles_csv, ',');
      auto index_of = [&](const std::string& name) -> std::size_t {
        auto it = std::find(sys.tiles.begin(), sys.tiles.end(), name);
        if (it == sys.tiles.end()) throw std::runtime_error("unknown tile in pair: " + name);
        return static_cast<std::size_t>(it - sys.tiles.begin());
      };
      for (const std::string& pair : detail::split(h_csv, ',')) {
        auto parts = detail::split(pair, ':');
        if (parts.size() != 2) throw std::runtime_error("bad pair (want a:b): " + pair);
        sys.horizontal.emplace_back(index_of(parts[0]), index_of(parts[1]));
      }
      for (const std::string& pair : detail::split(v_csv, ',')) {
        auto parts = detail::split(pair, ':');
        if (parts.size() != 2) throw std::runtime_error("bad pair (want a:b): " + pair);
        sys.vertical.emplace_back(index_of(parts[0]), index_of(parts[1]));
      }
      std::string text = domino_gen(sys);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text;
      }
      return 0;
    }
  } catch (const NonSimpleRoleError& e) {
    detail::report_non_simple(store, doc, e, err);
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace dlsat
