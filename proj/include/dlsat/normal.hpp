// ============================================================================
// dlsat/normal.hpp — negation normal form and syntactic closures
// ============================================================================

#pragma once

#include <vector>

#include "dlsat/syntax.hpp"

namespace dlsat {

ConceptId nnf(ConceptStore& store, ConceptId c);

// ~C: the NNF of ¬C.
//   ¬¬C → C            ¬(C⊓D) → ¬C⊔¬D       ¬(C⊔D) → ¬C⊓¬D
//   ¬∃R.C → ∀R.¬C      ¬∀R.C → ∃R.¬C
//   ¬(≥n R C) → ≤(n−1) R C  (n ≥ 1),  ⊥ when n = 0
//   ¬(≤n R C) → ≥(n+1) R C
//   ¬⊤ → ⊥             ¬⊥ → ⊤
inline ConceptId nnf_neg(ConceptStore& store, ConceptId c) {
  const ConceptNode n = store.node(c);
  switch (n.kind) {
    case ConceptKind::Atom: return store.make_not(c);
    case ConceptKind::Top: return store.bottom();
    case ConceptKind::Bottom: return store.top();
    case ConceptKind::Not: return nnf(store, n.lhs);
    case ConceptKind::And: return store.make_or(nnf_neg(store, n.lhs), nnf_neg(store, n.rhs));
    case ConceptKind::Or: return store.make_and(nnf_neg(store, n.lhs), nnf_neg(store, n.rhs));
    case ConceptKind::Exists: return store.make_forall(n.role, nnf_neg(store, n.lhs));
    case ConceptKind::Forall: return store.make_exists(n.role, nnf_neg(store, n.lhs));
    case ConceptKind::AtLeast:
      if (n.num == 0) return store.bottom();
      return store.make_at_most(n.num - 1, n.role, nnf(store, n.lhs));
    case ConceptKind::AtMost:
      return store.make_at_least(n.num + 1, n.role, nnf(store, n.lhs));
  }
  return c;
}

inline ConceptId nnf(ConceptStore& store, ConceptId c) {
  const ConceptNode n = store.node(c);
  switch (n.kind) {
    case ConceptKind::Atom:
    case ConceptKind::Top:
    case ConceptKind::Bottom: return c;
    case ConceptKind::Not: return nnf_neg(store, n.lhs);
    case ConceptKind::And: return store.make_and(nnf(store, n.lhs), nnf(store, n.rhs));
    case ConceptKind::Or: return store.make_or(nnf(store, n.lhs), nnf(store, n.rhs));
    case ConceptKind::Exists: return store.make_exists(n.role, nnf(store, n.lhs));
    case ConceptKind::Forall: return store.make_forall(n.role, nnf(store, n.lhs));
    case ConceptKind::AtLeast: return store.make_at_least(n.num, n.role, nnf(store, n.lhs));
    case ConceptKind::AtMost: return store.make_at_most(n.num, n.role, nnf(store, n.lhs));
  }
  return c;
}

inline bool is_nnf(const ConceptStore& store, ConceptId c) {
  const ConceptNode& n = store.node(c);
  switch (n.kind) {
    case ConceptKind::Atom:
    case ConceptKind::Top:
    case ConceptKind::Bottom: return true;
    case ConceptKind::Not: return store.node(n.lhs).kind == ConceptKind::Atom;
    case ConceptKind::And:
    case ConceptKind::Or: return is_nnf(store, n.lhs) && is_nnf(store, n.rhs);
    default: return is_nnf(store, n.lhs);
  }
}

// Direct (one-level) subconcepts.
inline void direct_subconcepts(const ConceptStore& store, ConceptId c,
                               std::vector<ConceptId>& out) {
  const ConceptNode& n = store.node(c);
  switch (n.kind) {
    case ConceptKind::Atom:
    case ConceptKind::Top:
    case ConceptKind::Bottom: break;
    case ConceptKind::And:
    case ConceptKind::Or:
      out.push_back(n.lhs);
      out.push_back(n.rhs);
      break;
    default: out.push_back(n.lhs); break;
  }
}

// sub(D): all syntactic subconcepts of d, including d.  Sorted by id.
inline std::vector<ConceptId> subconcepts(const ConceptStore& store, ConceptId d) {
  std::vector<ConceptId> seen, work{d};
  while (!work.empty()) {
    ConceptId c = work.back();
    work.pop_back();
    if (!flat::insert(seen, c)) continue;
    direct_subconcepts(store, c, work);
  }
  return seen;
}

// clos(D): the smallest set containing d that is closed under subconcepts
// and ~.  Requires d in NNF; every member is then in NNF.  Sorted by id.
inline std::vector<ConceptId> closure(ConceptStore& store, ConceptId d) {
  std::vector<ConceptId> seen, work{d};
  while (!work.empty()) {
    ConceptId c = work.back();
    work.pop_back();
    if (!flat::insert(seen, c)) continue;
    direct_subconcepts(store, c, work);
    work.push_back(nnf_neg(store, c));
  }
  return seen;
}

// Roles occurring in a concept (quantifiers and number restrictions).
inline void collect_roles(const ConceptStore& store, ConceptId c, std::vector<Role>& out) {
  const ConceptNode& n = store.node(c);
  if (has_role(n.kind)) flat::insert(out, n.role);
  switch (n.kind) {
    case ConceptKind::And:
    case ConceptKind::Or:
      collect_roles(store, n.lhs, out);
      collect_roles(store, n.rhs, out);
      break;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost: collect_roles(store, n.lhs, out); break;
    default: break;
  }
}

}  // namespace dlsat
