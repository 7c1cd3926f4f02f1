// ============================================================================
// dlsat/model_search.hpp — bounded brute-force model search
// ============================================================================
//
// find_model exhaustively decides "is there a model with at most max_domain
// elements?" — one domain size at a time, smallest first.  The search keeps
// a partial interpretation (every atom/role membership bit is true, false
// or unknown), evaluates concepts in Kleene three-valued logic, and
// branches on an unknown bit that blocks a definite verdict.  Two
// propagation rules run to fixpoint before every branch:
//
//   transitivity repair   R(a,b)=T ∧ R(b,c)=T  ⇒  R(a,c):=T
//   hierarchy             R ⊑* S ∧ R(a,b)=T    ⇒  S(a,b):=T
//
// so candidates are "repaired" into closed, hierarchy-respecting
// interpretations instead of being enumerated and filtered.  Symmetry is cut
// by pinning element 0 as the witness of the goal concept.
//
// The result is ONE-SIDED: none_up_to_bound (std::nullopt) never implies
// unsatisfiability — SHIQ lacks the finite model property.
//
// ============================================================================

#pragma once

#include <optional>

#include "dlsat/interpretation.hpp"
#include "dlsat/kb.hpp"

namespace dlsat {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ModelSearchOptions {
  std::uint32_t max_domain = 3;
  std::uint64_t budget = 20'000'000;  // search-tree node cap across all domain sizes
};

namespace detail {

enum class Tri : std::int8_t { F = 0, T = 1, U = 2 };

struct Bit {
  bool is_role = false;
  std::uint32_t idx = 0;
  bool valid = false;
};

struct Tri3 {
  Tri v = Tri::U;
  Bit hint;
};

struct SearchState {
  std::uint32_t n = 0;
  std::vector<Tri> atom_bits;  // [atom_index * n + x]
  std::vector<Tri> role_bits;  // [role_index * n * n + x * n + y]
};

class ModelSearch {
public:
  ModelSearch(ConceptStore& store, ConceptId goal, const RoleBox& rbox, const Terminology* tbox,
              std::uint64_t budget)
      : store_(store), goal_(goal), rbox_(rbox), budget_(budget) {
    std::vector<Role> roles;
    collect_roles(store_, goal, roles);
    collect_atoms(goal);
    if (tbox) {
      for (const auto& [c, d] : tbox->gcis) {
        // the GCI constraint per element: ¬C_i ⊔ D_i
        gci_constraints_.push_back(store.make_or(store.make_not(c), d));
        collect_roles(store_, c, roles);
        collect_roles(store_, d, roles);
        collect_atoms(c);
        collect_atoms(d);
      }
    }
    for (Role r : rbox.universe) flat::insert(roles, r);
    for (Role r : roles) flat::insert(role_syms_, r.name);
    for (Symbol t : rbox.transitive)
      if (flat::contains(role_syms_, t)) flat::insert(trans_idx_, role_index(t));
    for (Role r : rbox.universe)
      for (Role s : rbox.universe)
        if (!(r == s) && rbox.subsumed(r, s)) hier_pairs_.emplace_back(r, s);
  }

  std::optional<Interpretation> run(std::uint32_t max_domain) {
    for (std::uint32_t n = 1; n <= max_domain; ++n) {
      SearchState st;
      st.n = n;
      st.atom_bits.assign(atom_syms_.size() * n, Tri::U);
      st.role_bits.assign(role_syms_.size() * n * n, Tri::U);
      if (dfs(st)) return result_;
    }
    return std::nullopt;
  }

private:
  void collect_atoms(ConceptId c) {
    const ConceptNode& n = store_.node(c);
    if (n.kind == ConceptKind::Atom) {
      flat::insert(atom_syms_, n.sym);
      return;
    }
    std::vector<ConceptId> subs;
    direct_subconcepts(store_, c, subs);
    for (ConceptId s : subs) collect_atoms(s);
  }

  std::uint32_t atom_index(Symbol s) const {
    return static_cast<std::uint32_t>(
        std::lower_bound(atom_syms_.begin(), atom_syms_.end(), s) - atom_syms_.begin());
  }
  std::uint32_t role_index(Symbol s) const {
    return static_cast<std::uint32_t>(
        std::lower_bound(role_syms_.begin(), role_syms_.end(), s) - role_syms_.begin());
  }

  Tri atom3(const SearchState& st, Symbol sym, std::uint32_t x) const {
    return st.atom_bits[atom_index(sym) * st.n + x];
  }
  std::uint32_t role_bit_idx(const SearchState& st, std::uint32_t ridx, std::uint32_t x,
                             std::uint32_t y) const {
    return ridx * st.n * st.n + x * st.n + y;
  }
  Tri role3(const SearchState& st, Role r, std::uint32_t x, std::uint32_t y) const {
    std::uint32_t ridx = role_index(r.name);
    return r.inverted ? st.role_bits[role_bit_idx(st, ridx, y, x)]
                      : st.role_bits[role_bit_idx(st, ridx, x, y)];
  }
  Bit role_hint(const SearchState& st, Role r, std::uint32_t x, std::uint32_t y) const {
    std::uint32_t ridx = role_index(r.name);
    std::uint32_t idx =
        r.inverted ? role_bit_idx(st, ridx, y, x) : role_bit_idx(st, ridx, x, y);
    return Bit{true, idx, true};
  }

  Tri3 eval3(const SearchState& st, ConceptId c, std::uint32_t x) const {
    const ConceptNode& n = store_.node(c);
    switch (n.kind) {
      case ConceptKind::Top: return {Tri::T, {}};
      case ConceptKind::Bottom: return {Tri::F, {}};
      case ConceptKind::Atom: {
        Tri v = atom3(st, n.sym, x);
        return {v, Bit{false, atom_index(n.sym) * st.n + x, v == Tri::U}};
      }
      case ConceptKind::Not: {
        Tri3 r = eval3(st, n.lhs, x);
        if (r.v == Tri::T) r.v = Tri::F;
        else if (r.v == Tri::F) r.v = Tri::T;
        return r;
      }
      case ConceptKind::And: {
        Tri3 a = eval3(st, n.lhs, x);
        if (a.v == Tri::F) return {Tri::F, {}};
        Tri3 b = eval3(st, n.rhs, x);
        if (b.v == Tri::F) return {Tri::F, {}};
        if (a.v == Tri::T && b.v == Tri::T) return {Tri::T, {}};
        return {Tri::U, a.v == Tri::U ? a.hint : b.hint};
      }
      case ConceptKind::Or: {
        Tri3 a = eval3(st, n.lhs, x);
        if (a.v == Tri::T) return {Tri::T, {}};
        Tri3 b = eval3(st, n.rhs, x);
        if (b.v == Tri::T) return {Tri::T, {}};
        if (a.v == Tri::F && b.v == Tri::F) return {Tri::F, {}};
        return {Tri::U, a.v == Tri::U ? a.hint : b.hint};
      }
      case ConceptKind::Exists: {
        bool any_unknown = false;
        Bit hint;
        for (std::uint32_t y = 0; y < st.n; ++y) {
          Tri p = role3(st, n.role, x, y);
          if (p == Tri::F) continue;
          Tri3 cv = eval3(st, n.lhs, y);
          if (cv.v == Tri::F) continue;
          if (p == Tri::T && cv.v == Tri::T) return {Tri::T, {}};
          if (!any_unknown) {
            any_unknown = true;
            hint = p == Tri::U ? role_hint(st, n.role, x, y) : cv.hint;
          }
        }
        return any_unknown ? Tri3{Tri::U, hint} : Tri3{Tri::F, {}};
      }
      case ConceptKind::Forall: {
        bool any_unknown = false;
        Bit hint;
        for (std::uint32_t y = 0; y < st.n; ++y) {
          Tri p = role3(st, n.role, x, y);
          if (p == Tri::F) continue;
          Tri3 cv = eval3(st, n.lhs, y);
          if (p == Tri::T && cv.v == Tri::F) return {Tri::F, {}};
          if (cv.v == Tri::T) continue;
          if (!any_unknown) {
            any_unknown = true;
            hint = p == Tri::U ? role_hint(st, n.role, x, y) : cv.hint;
          }
        }
        return any_unknown ? Tri3{Tri::U, hint} : Tri3{Tri::T, {}};
      }
      case ConceptKind::AtLeast:
      case ConceptKind::AtMost: {
        std::uint32_t definite = 0, possible = 0;
        Bit hint;
        bool have_hint = false;
        for (std::uint32_t y = 0; y < st.n; ++y) {
          Tri p = role3(st, n.role, x, y);
          if (p == Tri::F) continue;
          Tri3 cv = eval3(st, n.lhs, y);
          if (cv.v == Tri::F) continue;
          ++possible;
          if (p == Tri::T && cv.v == Tri::T) {
            ++definite;
          } else if (!have_hint) {
            have_hint = true;
            hint = p == Tri::U ? role_hint(st, n.role, x, y) : cv.hint;
          }
        }
        if (n.kind == ConceptKind::AtLeast) {
          if (definite >= n.num) return {Tri::T, {}};
          if (possible < n.num) return {Tri::F, {}};
        } else {
          if (definite > n.num) return {Tri::F, {}};
          if (possible <= n.num) return {Tri::T, {}};
        }
        return {Tri::U, hint};
      }
    }
    return {Tri::U, {}};
  }

  // Transitivity and hierarchy propagation to fixpoint; false on conflict.
  bool propagate(SearchState& st) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t ridx : trans_idx_) {
        for (std::uint32_t a = 0; a < st.n; ++a)
          for (std::uint32_t b = 0; b < st.n; ++b) {
            if (st.role_bits[role_bit_idx(st, ridx, a, b)] != Tri::T) continue;
            for (std::uint32_t c = 0; c < st.n; ++c) {
              if (st.role_bits[role_bit_idx(st, ridx, b, c)] != Tri::T) continue;
              Tri& ac = st.role_bits[role_bit_idx(st, ridx, a, c)];
              if (ac == Tri::F) return false;
              if (ac == Tri::U) {
                ac = Tri::T;
                changed = true;
              }
            }
          }
      }
      for (const auto& [r, s] : hier_pairs_) {
        for (std::uint32_t a = 0; a < st.n; ++a)
          for (std::uint32_t b = 0; b < st.n; ++b) {
            if (role3(st, r, a, b) != Tri::T) continue;
            std::uint32_t sidx = role_index(s.name);
            Tri& bit = s.inverted ? st.role_bits[role_bit_idx(st, sidx, b, a)]
                                  : st.role_bits[role_bit_idx(st, sidx, a, b)];
            if (bit == Tri::F) return false;
            if (bit == Tri::U) {
              bit = Tri::T;
              changed = true;
            }
          }
      }
    }
    return true;
  }

  bool dfs(SearchState st) {
    if (++nodes_ > budget_) throw BudgetExceeded("find_model: search budget exceeded");
    if (!propagate(st)) return false;

    // goal pinned to element 0; GCIs everywhere
    Bit branch;
    Tri3 g = eval3(st, goal_, 0);
    if (g.v == Tri::F) return false;
    if (g.v == Tri::U) branch = g.hint;
    if (!branch.valid) {
      for (ConceptId gc : gci_constraints_) {
        for (std::uint32_t x = 0; x < st.n; ++x) {
          Tri3 v = eval3(st, gc, x);
          if (v.v == Tri::F) return false;
          if (v.v == Tri::U && !branch.valid) branch = v.hint;
        }
        if (branch.valid) break;
      }
    }
    if (!branch.valid) {
      finish(st);
      return true;
    }
    for (Tri v : {Tri::T, Tri::F}) {
      SearchState next = st;
      (branch.is_role ? next.role_bits[branch.idx] : next.atom_bits[branch.idx]) = v;
      if (dfs(std::move(next))) return true;
    }
    return false;
  }

  void finish(const SearchState& st) {
    Interpretation m;
    m.size = st.n;
    for (std::size_t ai = 0; ai < atom_syms_.size(); ++ai) {
      std::vector<bool> ext(st.n, false);
      for (std::uint32_t x = 0; x < st.n; ++x) ext[x] = st.atom_bits[ai * st.n + x] == Tri::T;
      m.atoms[atom_syms_[ai]] = std::move(ext);
    }
    for (std::size_t ri = 0; ri < role_syms_.size(); ++ri) {
      std::set<DomainPair> ext;
      for (std::uint32_t x = 0; x < st.n; ++x)
        for (std::uint32_t y = 0; y < st.n; ++y)
          if (st.role_bits[role_bit_idx(st, static_cast<std::uint32_t>(ri), x, y)] == Tri::T)
            ext.insert({x, y});
      m.roles[role_syms_[ri]] = std::move(ext);
    }
    assert(eval_concept(store_, m, goal_)[0]);
    assert(respects_transitivity(m, rbox_));
    assert(respects_hierarchy(m, rbox_));
    result_ = std::move(m);
  }

  ConceptStore& store_;
  ConceptId goal_;
  const RoleBox& rbox_;
  std::vector<Symbol> atom_syms_, role_syms_;
  std::vector<std::uint32_t> trans_idx_;
  std::vector<std::pair<Role, Role>> hier_pairs_;
  std::vector<ConceptId> gci_constraints_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::optional<Interpretation> result_;
};

}  // namespace detail

// Searches domains 1..max_domain for a model of c (and of every GCI of
// `tbox`, when given) that satisfies the role box.  Returns the first model
// found or std::nullopt ("none up to bound").  Throws BudgetExceeded when
// the search-space cap is hit.
inline std::optional<Interpretation> find_model(ConceptStore& store, ConceptId c,
                                                const RoleBox& rbox,
                                                const Terminology* tbox = nullptr,
                                                ModelSearchOptions opts = {}) {
  detail::ModelSearch search(store, c, rbox, tbox, opts.budget);
  return search.run(opts.max_domain);
}

}  // namespace dlsat
