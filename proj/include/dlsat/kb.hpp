// ============================================================================
// dlsat/kb.hpp — terminologies, internalisation, classification
// ============================================================================
//
// A Terminology is a finite set of general concept inclusions C_i ⊑ D_i over
// a role box.  Internalisation folds it into a single satisfiability
// problem: with C_T = ⨅ (¬C_i ⊔ D_i) and a fresh transitive universal role
// U above every source role and its inverse,
//
//     C satisfiable w.r.t. T, R⁺   iff   C ⊓ C_T ⊓ ∀U.C_T satisfiable w.r.t. R_U⁺
//     T ⊨ C ⊑ D                   iff   C ⊓ ¬D ⊓ C_T ⊓ ∀U.C_T unsatisfiable
//
// U is the reserved identifier "_U"; the parser rejects underscore-leading
// names in input, which enforces the freshness precondition mechanically.
// An explicit scan backs this up for programmatic callers.
//
// ============================================================================

#pragma once

#include <functional>
#include <map>
#include <string>

#include "dlsat/normal.hpp"
#include "dlsat/rolebox.hpp"
#include "dlsat/shiq.hpp"

namespace dlsat {

inline constexpr const char* kUniversalRoleName = "_U";

struct Terminology {
  std::vector<std::pair<ConceptId, ConceptId>> gcis;  // C_i ⊑ D_i
  RoleBox rbox;
};

struct InternalisedProblem {
  ConceptId goal = kNoConcept;  // NNF
  RoleBox rbox_u;
  Role universal_role;
};

namespace detail {

inline void collect_role_names(const ConceptStore& store, ConceptId c, std::vector<Symbol>& out) {
  std::vector<Role> roles;
  collect_roles(store, c, roles);
  for (Role r : roles) flat::insert(out, r.name);
}

inline bool mentions_role(const ConceptStore& store, ConceptId c, Symbol role) {
  std::vector<Role> roles;
  collect_roles(store, c, roles);
  for (Role r : roles)
    if (r.name == role) return true;
  return false;
}

// Right-associated big conjunction of ¬C_i ⊔ D_i; ⊤ for the empty set.
inline ConceptId tbox_concept(ConceptStore& store, const Terminology& t) {
  ConceptId acc = kNoConcept;
  for (auto it = t.gcis.rbegin(); it != t.gcis.rend(); ++it) {
    ConceptId gci = store.make_or(store.make_not(it->first), it->second);
    acc = acc == kNoConcept ? gci : store.make_and(gci, acc);
  }
  return acc == kNoConcept ? store.top() : acc;
}

inline InternalisedProblem internalise(ConceptStore& store, const Terminology& t,
                                       ConceptId query) {
  Symbol u = store.role_symbol(kUniversalRoleName);
  // Freshness: U must not occur in the terminology, the query, or the rbox.
  for (const auto& [c, d] : t.gcis)
    if (mentions_role(store, c, u) || mentions_role(store, d, u))
      throw std::invalid_argument("universal role occurs in terminology");
  if (mentions_role(store, query, u))
    throw std::invalid_argument("universal role occurs in query concept");
  for (Role r : t.rbox.universe)
    if (r.name == u) throw std::invalid_argument("universal role occurs in role box");

  std::vector<Symbol> sources;
  for (const auto& [c, d] : t.gcis) {
    collect_role_names(store, c, sources);
    collect_role_names(store, d, sources);
  }
  collect_role_names(store, query, sources);
  for (Role r : t.rbox.universe) flat::insert(sources, r.name);

  Role universal{u, false};
  auto inclusions = t.rbox.inclusions;
  for (Symbol s : sources) {
    inclusions.push_back({Role{s, false}, universal});
    inclusions.push_back({Role{s, true}, universal});
  }
  auto transitive = t.rbox.transitive;
  transitive.push_back(u);

  InternalisedProblem p;
  p.universal_role = universal;
  p.rbox_u = close_hierarchy(std::move(transitive), std::move(inclusions));

  ConceptId ct = tbox_concept(store, t);
  p.goal = nnf(store, store.make_and(query, store.make_and(ct, store.make_forall(universal, ct))));
  return p;
}

}  // namespace detail

// C satisfiable w.r.t. t  iff  the returned goal is satisfiable w.r.t. rbox_u.
inline InternalisedProblem internalise_sat(ConceptStore& store, const Terminology& t,
                                           ConceptId c) {
  return detail::internalise(store, t, c);
}

// d subsumes c w.r.t. t  iff  the returned goal is unsatisfiable w.r.t. rbox_u.
inline InternalisedProblem internalise_subsumes(ConceptStore& store, const Terminology& t,
                                                ConceptId c, ConceptId d) {
  return detail::internalise(store, t, store.make_and(c, store.make_not(d)));
}

// ── classification ──────────────────────────────────────────────────────────

struct Classification {
  std::vector<std::string> names;
  std::vector<ConceptId> concepts;
  // subsumes[i][j]: concepts[i] ⊑ concepts[j] w.r.t. the terminology.
  std::vector<std::vector<bool>> subsumes;
  std::uint32_t engine_tests = 0;  // subsumption tests actually run
};

// Subsumption preorder over the given names, computed by pairwise
// internalise_subsumes tests with told-subsumption and transitivity
// shortcuts.  Shortcuts only ever add sound positives, so the result equals
// the exhaustive pairwise relation (tested).  Reflexive and transitively
// closed by construction.
inline Classification classify(ConceptStore& store, const Terminology& t,
                               const std::vector<std::pair<std::string, ConceptId>>& names,
                               EngineOptions opts = {}) {
  Classification out;
  for (const auto& [name, c] : names) {
    out.names.push_back(name);
    out.concepts.push_back(c);
  }
  const std::size_t n = out.concepts.size();

  // Simple-role guard up front so the failure names the definition.
  for (std::size_t i = 0; i < n; ++i) {
    ConceptId d = nnf(store, out.concepts[i]);
    for (ConceptId c : closure(store, d)) {
      const ConceptNode& cn = store.node(c);
      if (is_number_restriction(cn.kind) && !is_simple(cn.role, t.rbox))
        throw NonSimpleRoleError(store.role_name(cn.role.name),
                                 "definition of " + out.names[i] +
                                     " uses a number restriction on non-simple role " +
                                     store.role_sexpr(cn.role));
    }
  }

  enum class Cell : std::uint8_t { Unknown, Yes, No };
  std::vector<std::vector<Cell>> cell(n, std::vector<Cell>(n, Cell::Unknown));
  for (std::size_t i = 0; i < n; ++i) cell[i][i] = Cell::Yes;

  // Told subsumptions: identical definitions, GCIs matching two definitions,
  // and conjuncts of a definition.
  std::function<void(ConceptId, std::vector<ConceptId>&)> conjuncts =
      [&](ConceptId c, std::vector<ConceptId>& acc) {
        const ConceptNode& cn = store.node(c);
        if (cn.kind == ConceptKind::And) {
          conjuncts(cn.lhs, acc);
          conjuncts(cn.rhs, acc);
        } else {
          acc.push_back(c);
        }
      };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ConceptId> parts;
    conjuncts(out.concepts[i], parts);
    for (std::size_t j = 0; j < n; ++j) {
      if (out.concepts[i] == out.concepts[j]) cell[i][j] = Cell::Yes;
      if (std::find(parts.begin(), parts.end(), out.concepts[j]) != parts.end())
        cell[i][j] = Cell::Yes;
    }
  }
  for (const auto& [c, d] : t.gcis)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (out.concepts[i] == c && out.concepts[j] == d) cell[i][j] = Cell::Yes;

  auto propagate = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (cell[i][j] != Cell::Yes) continue;
          for (std::size_t k = 0; k < n; ++k)
            if (cell[j][k] == Cell::Yes && cell[i][k] != Cell::Yes) {
              cell[i][k] = Cell::Yes;
              changed = true;
            }
        }
    }
  };
  propagate();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (cell[i][j] != Cell::Unknown) continue;
      auto p = internalise_subsumes(store, t, out.concepts[i], out.concepts[j]);
      out.engine_tests++;
      bool holds = !decide_sat(store, p.goal, p.rbox_u, opts).satisfiable;
      cell[i][j] = holds ? Cell::Yes : Cell::No;
      if (holds) propagate();
    }

  out.subsumes.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.subsumes[i][j] = cell[i][j] == Cell::Yes;
  return out;
}

}  // namespace dlsat
