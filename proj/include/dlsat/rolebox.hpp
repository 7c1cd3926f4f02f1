// ============================================================================
// dlsat/rolebox.hpp — transitive roles, role hierarchies, simple roles
// ============================================================================
//
// A RoleBox holds the declared transitive role names R₊ and role inclusion
// axioms R ⊑ S, plus the computed subsumption relation ⊑*: the
// reflexive-transitive closure of the declared inclusions together with
// their Inv-images {Inv(R) ⊑ Inv(S)}.  The closure is materialised over the
// finite universe of mentioned roles and their inverses; roles outside the
// universe are only subsumed reflexively.
//
// ============================================================================

#pragma once

#include <unordered_set>
#include <utility>
#include <vector>

#include "dlsat/syntax.hpp"

namespace dlsat {

struct RoleBox {
  std::vector<Symbol> transitive;                  // sorted role-name symbols (R₊)
  std::vector<std::pair<Role, Role>> inclusions;   // declared R ⊑ S axioms
  std::vector<Role> universe;                      // mentioned roles + inverses, sorted
  std::unordered_set<std::uint64_t> subsumption;   // closed ⊑* pairs over the universe

  static std::uint64_t pair_key(Role r, Role s) {
    return (static_cast<std::uint64_t>(r.raw()) << 32) | s.raw();
  }

  // r ⊑* s.  Reflexive for every role, including ones never mentioned.
  bool subsumed(Role r, Role s) const {
    if (r == s) return true;
    return subsumption.count(pair_key(r, s)) != 0;
  }
};

// Trans(R): true iff R ∈ R₊ or Inv(R) ∈ R₊.  Both reduce to the name.
inline bool is_transitive(Role r, const RoleBox& rbox) {
  return flat::contains(rbox.transitive, r.name);
}

// Builds the Inv-closed reflexive-transitive closure of `inclusions`.
// `mentioned` lets callers pull roles into the universe that occur only in
// concepts (cycles in the inclusions are fine, they yield mutual subsumption).
inline RoleBox close_hierarchy(std::vector<Symbol> transitive,
                               std::vector<std::pair<Role, Role>> inclusions,
                               const std::vector<Role>& mentioned = {}) {
  RoleBox rb;
  std::sort(transitive.begin(), transitive.end());
  transitive.erase(std::unique(transitive.begin(), transitive.end()), transitive.end());
  rb.transitive = std::move(transitive);
  rb.inclusions = std::move(inclusions);

  std::vector<Role> uni;
  auto mention = [&uni](Role r) {
    flat::insert(uni, r);
    flat::insert(uni, inv(r));
  };
  for (const auto& [r, s] : rb.inclusions) {
    mention(r);
    mention(s);
  }
  for (Symbol t : rb.transitive) mention(Role{t, false});
  for (Role r : mentioned) mention(r);
  rb.universe = uni;

  // Direct edges: declared inclusions plus their Inv-images.
  std::vector<std::pair<Role, Role>> edges = rb.inclusions;
  for (const auto& [r, s] : rb.inclusions) edges.emplace_back(inv(r), inv(s));

  // Reflexive-transitive closure by repeated relaxation; the universe is
  // small enough that anything fancier is noise.
  for (Role r : uni) rb.subsumption.insert(RoleBox::pair_key(r, r));
  for (const auto& [r, s] : edges) rb.subsumption.insert(RoleBox::pair_key(r, s));
  bool changed = true;
  while (changed) {
    changed = false;
    for (Role a : uni)
      for (Role b : uni) {
        if (!rb.subsumed(a, b)) continue;
        for (Role c : uni) {
          if (rb.subsumed(b, c) && !rb.subsumed(a, c)) {
            rb.subsumption.insert(RoleBox::pair_key(a, c));
            changed = true;
          }
        }
      }
  }
  return rb;
}

// A role is simple iff it is neither transitive nor has a transitive
// sub-role (w.r.t. ⊑*, which includes the role itself).
inline bool is_simple(Role r, const RoleBox& rbox) {
  if (is_transitive(r, rbox)) return false;
  for (Role s : rbox.universe)
    if (rbox.subsumed(s, r) && is_transitive(s, rbox)) return false;
  return true;
}

}  // namespace dlsat
