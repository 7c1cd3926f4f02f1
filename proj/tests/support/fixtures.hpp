// Shared paper-derived fixtures.

#pragma once

#include "dlsat/kb.hpp"
#include "dlsat/normal.hpp"
#include "dlsat/rolebox.hpp"

namespace fixtures {

using namespace dlsat;

// The concept that is satisfiable but has no finite model (F ⊑ R, Trans(R)):
//   ¬C ⊓ ∃F⁻.(C ⊓ ≤1 F) ⊓ ∀R⁻.(∃F⁻.(C ⊓ ≤1 F))
struct InfiniteModel {
  ConceptId goal;  // NNF
  RoleBox rbox;
};

inline InfiniteModel infinite_model(ConceptStore& s) {
  Role f = s.make_role("F"), r = s.make_role("R");
  ConceptId c = s.make_atom("C");
  ConceptId inner = s.make_exists(inv(f), s.make_and(c, s.make_at_most(1, f, s.top())));
  ConceptId raw = s.make_and(s.make_not(c), s.make_and(inner, s.make_forall(inv(r), inner)));
  InfiniteModel out;
  out.goal = nnf(s, raw);
  out.rbox = close_hierarchy({r.name}, {{f, r}});
  return out;
}

// (≥3 R A) ⊓ (≤1 R B) ⊓ (≤1 R ¬B): unsatisfiable, but only the choose-rule
// exposes it.
inline ConceptId choose_necessity(ConceptStore& s) {
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A"), b = s.make_atom("B");
  return nnf(s, s.make_and(s.make_at_least(3, r, a),
                           s.make_and(s.make_at_most(1, r, b),
                                      s.make_at_most(1, r, s.make_not(b)))));
}

}  // namespace fixtures
