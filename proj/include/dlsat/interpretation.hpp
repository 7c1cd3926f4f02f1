// ============================================================================
// dlsat/interpretation.hpp — finite interpretations and direct model checking
// ============================================================================
//
// An Interpretation is a finite domain {0..size-1} with atom extensions and
// role extensions over named roles.  eval_concept computes C^I literally
// from the semantics table: inverse roles read the converse relation,
// number restrictions count qualifying successors.  Atoms and roles with no
// entry default to the empty extension.
//
// ============================================================================

#pragma once

#include <map>
#include <set>
#include <vector>

#include "dlsat/rolebox.hpp"
#include "dlsat/syntax.hpp"

namespace dlsat {

using DomainPair = std::pair<std::uint32_t, std::uint32_t>;

struct Interpretation {
  std::uint32_t size = 0;
  std::map<Symbol, std::vector<bool>> atoms;        // atom symbol -> characteristic vector
  std::map<Symbol, std::set<DomainPair>> roles;     // role name -> pairs

  bool atom_holds(Symbol s, std::uint32_t x) const {
    auto it = atoms.find(s);
    return it != atoms.end() && it->second[x];
  }
  bool role_holds(Role r, std::uint32_t x, std::uint32_t y) const {
    auto it = roles.find(r.name);
    if (it == roles.end()) return false;
    return r.inverted ? it->second.count({y, x}) != 0 : it->second.count({x, y}) != 0;
  }
};

// Transitive closure of a pair set; the repair step for transitive roles.
// Idempotent, and the identity on already-closed relations.
inline std::set<DomainPair> transitive_closure(std::set<DomainPair> pairs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const DomainPair& ab : pairs)
      for (const DomainPair& bc : pairs) {
        if (ab.second != bc.first) continue;
        if (pairs.insert({ab.first, bc.second}).second) changed = true;
      }
  }
  return pairs;
}

// R^I = (R^I)^+ for every transitive role name.
inline bool respects_transitivity(const Interpretation& i, const RoleBox& rbox) {
  for (Symbol t : rbox.transitive) {
    auto it = i.roles.find(t);
    if (it == i.roles.end()) continue;
    if (transitive_closure(it->second) != it->second) return false;
  }
  return true;
}

// R^I ⊆ S^I for every R ⊑* S.
inline bool respects_hierarchy(const Interpretation& i, const RoleBox& rbox) {
  for (Role r : rbox.universe)
    for (Role s : rbox.universe) {
      if (r == s || !rbox.subsumed(r, s)) continue;
      for (std::uint32_t x = 0; x < i.size; ++x)
        for (std::uint32_t y = 0; y < i.size; ++y)
          if (i.role_holds(r, x, y) && !i.role_holds(s, x, y)) return false;
    }
  return true;
}

// C^I as a characteristic vector over the domain.
inline std::vector<bool> eval_concept(const ConceptStore& store, const Interpretation& i,
                                      ConceptId c) {
  const ConceptNode& n = store.node(c);
  std::vector<bool> out(i.size, false);
  switch (n.kind) {
    case ConceptKind::Atom:
      for (std::uint32_t x = 0; x < i.size; ++x) out[x] = i.atom_holds(n.sym, x);
      break;
    case ConceptKind::Top: out.assign(i.size, true); break;
    case ConceptKind::Bottom: break;
    case ConceptKind::Not: {
      auto v = eval_concept(store, i, n.lhs);
      for (std::uint32_t x = 0; x < i.size; ++x) out[x] = !v[x];
      break;
    }
    case ConceptKind::And: {
      auto a = eval_concept(store, i, n.lhs), b = eval_concept(store, i, n.rhs);
      for (std::uint32_t x = 0; x < i.size; ++x) out[x] = a[x] && b[x];
      break;
    }
    case ConceptKind::Or: {
      auto a = eval_concept(store, i, n.lhs), b = eval_concept(store, i, n.rhs);
      for (std::uint32_t x = 0; x < i.size; ++x) out[x] = a[x] || b[x];
      break;
    }
    case ConceptKind::Exists: {
      auto v = eval_concept(store, i, n.lhs);
      for (std::uint32_t x = 0; x < i.size; ++x)
        for (std::uint32_t y = 0; y < i.size && !out[x]; ++y)
          if (i.role_holds(n.role, x, y) && v[y]) out[x] = true;
      break;
    }
    case ConceptKind::Forall: {
      auto v = eval_concept(store, i, n.lhs);
      for (std::uint32_t x = 0; x < i.size; ++x) {
        bool all = true;
        for (std::uint32_t y = 0; y < i.size && all; ++y)
          if (i.role_holds(n.role, x, y) && !v[y]) all = false;
        out[x] = all;
      }
      break;
    }
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost: {
      auto v = eval_concept(store, i, n.lhs);
      for (std::uint32_t x = 0; x < i.size; ++x) {
        std::uint32_t count = 0;
        for (std::uint32_t y = 0; y < i.size; ++y)
          if (i.role_holds(n.role, x, y) && v[y]) ++count;
        out[x] = n.kind == ConceptKind::AtLeast ? count >= n.num : count <= n.num;
      }
      break;
    }
  }
  return out;
}

inline bool satisfies_somewhere(const ConceptStore& store, const Interpretation& i, ConceptId c) {
  auto v = eval_concept(store, i, c);
  return std::find(v.begin(), v.end(), true) != v.end();
}

}  // namespace dlsat
