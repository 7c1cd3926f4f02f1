// ============================================================================
// dlsat/si.hpp — the dedicated SI decision procedure
// ============================================================================
//
// SI concepts: no number restrictions, no role hierarchy; transitive and
// inverse roles allowed.  Nodes carry two labels B(x) ⊆ L(x) ⊆ sub(D): B is
// the non-decomposed constraints a node must satisfy, L additionally holds
// boolean decompositions and the concepts imposed upward by descendants.
// Each edge carries exactly one (possibly inverse) role.
//
// Blocking is by similarity, not equality: x (incoming role S) is blocked
// by an ancestor y iff  B(x) ⊆ L(y)  and  L(x)/Inv(S) = L(y)/Inv(S), where
// L(z)/Inv(S) = { ∀Inv(S).C ∈ L(z) }.  Every path has length at most m⁴,
// m = |sub(D)| — asserted live.
//
// The ∃-rule is gated on "x is not blocked and no other rule is applicable
// to any of its ancestors": the scheduler saturates ⊓/⊔/∀/∀₊ everywhere
// (including pending disjunction choices) before generating, which realises
// the guard as a strict top-down discipline.
//
// si_decide_sat keeps the whole tree.  si_decide_sat_trace additionally
// obeys the reset-restart discipline: whenever a ∀/∀₊ instance fires into a
// predecessor y (case 2'), all successors of y are deleted and generation
// restarts, which lets the exploration hold only the current root-to-node
// path.  Deleted nodes reappear with fresh ids.
//
// ============================================================================

#pragma once

#include <optional>

#include "dlsat/normal.hpp"
#include "dlsat/shiq.hpp"
#include "dlsat/trace.hpp"

namespace dlsat {

struct SiNode {
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  std::vector<ConceptId> l_label, b_label;  // B ⊆ L, both sorted
  std::uint32_t in_role_raw = 0;            // single role on the incoming edge
  bool has_in_role = false;
  std::uint32_t depth = 0;
  ConceptId created_filler = kNoConcept;  // the ∃-filler this node was created for
};

struct SiTree {
  std::vector<SiNode> nodes;
  NodeId root() const { return 0; }
};

struct SiVerdict {
  bool satisfiable = false;
  SiTree witness;  // whole-tree mode only; trace mode keeps no full tree
  EngineStats stats;
};

// L(z)/Inv(S): the ∀Inv(S).C concepts in a label.
inline std::vector<ConceptId> forall_restriction(const ConceptStore& store,
                                                 const std::vector<ConceptId>& label, Role s) {
  std::vector<ConceptId> out;
  Role target = inv(s);
  for (ConceptId c : label) {
    const ConceptNode& n = store.node(c);
    if (n.kind == ConceptKind::Forall && n.role == target) out.push_back(c);
  }
  return out;
}

namespace detail {

// Similarity blocking over an explicit ancestor chain of (L, B, in-role)
// rows; works for both the whole-tree and the path-only engines.
template <typename GetL, typename GetB, typename GetRole>
bool si_blocked_on_path(const ConceptStore& store, std::size_t count, GetL l, GetB b,
                        GetRole role) {
  std::vector<bool> blocked(count, false);
  for (std::size_t i = 1; i < count; ++i) {
    if (blocked[i - 1]) {  // any blocked ancestor blocks the whole subtree
      blocked[i] = true;
      continue;
    }
    Role s = role(i);
    auto mine = forall_restriction(store, l(i), s);
    for (std::size_t j = 0; j + 1 <= i && !blocked[i]; ++j) {
      const auto& ly = l(j);
      bool subset = std::includes(ly.begin(), ly.end(), b(i).begin(), b(i).end());
      if (subset && mine == forall_restriction(store, ly, s)) blocked[i] = true;
    }
  }
  return blocked[count - 1];
}

}  // namespace detail

inline bool si_is_blocked(const ConceptStore& store, const SiTree& t, NodeId x) {
  if (t.nodes[x].parent == kNoNode) return false;
  std::vector<NodeId> path;
  for (NodeId v = x; v != kNoNode; v = t.nodes[v].parent) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return detail::si_blocked_on_path(
      store, path.size(), [&](std::size_t i) -> const std::vector<ConceptId>& { return t.nodes[path[i]].l_label; },
      [&](std::size_t i) -> const std::vector<ConceptId>& { return t.nodes[path[i]].b_label; },
      [&](std::size_t i) { return Role::from_raw(t.nodes[path[i]].in_role_raw); });
}

inline bool si_has_clash(const ConceptStore& store, const SiTree& t, NodeId x) {
  const auto& l = t.nodes[x].l_label;
  for (ConceptId c : l) {
    const ConceptNode& n = store.node(c);
    if (n.kind == ConceptKind::Bottom) return true;
    if (n.kind == ConceptKind::Not && flat::contains(l, n.lhs)) return true;
  }
  return false;
}

// ── rule instances (whole-tree mode) ────────────────────────────────────────

namespace detail {

struct SiDet {
  RuleKind rule;
  NodeId x, y;
  ConceptId c;      // triggering concept
  ConceptId add;
  bool into_b;      // successor case: add to both L and B
};

inline bool is_transitive_sym(Symbol name, const std::vector<Symbol>& trans) {
  return flat::contains(trans, name);
}

// Fig. 3 deterministic rules in a fixed scan order: ⊓, then ∀ (successor
// case 2, then predecessor case 2'), then ∀₊ likewise.
inline std::optional<SiDet> si_find_det(const ConceptStore& store, const SiTree& t,
                                        const std::vector<Symbol>& trans) {
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    for (ConceptId c : t.nodes[x].l_label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::And) continue;
      if (!flat::contains(t.nodes[x].l_label, n.lhs) ||
          !flat::contains(t.nodes[x].l_label, n.rhs))
        return SiDet{RuleKind::Conj, x, x, c, kNoConcept, false};
    }
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    for (ConceptId c : t.nodes[x].l_label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Forall) continue;
      for (NodeId y : t.nodes[x].children)
        if (t.nodes[y].in_role_raw == n.role.raw() && !flat::contains(t.nodes[y].b_label, n.lhs))
          return SiDet{RuleKind::Forall, x, y, c, n.lhs, true};
      NodeId p = t.nodes[x].parent;
      if (p != kNoNode && t.nodes[x].in_role_raw == inv(n.role).raw() &&
          !flat::contains(t.nodes[p].l_label, n.lhs))
        return SiDet{RuleKind::Forall, x, p, c, n.lhs, false};
    }
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    for (ConceptId c : t.nodes[x].l_label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Forall || !is_transitive_sym(n.role.name, trans)) continue;
      for (NodeId y : t.nodes[x].children)
        if (t.nodes[y].in_role_raw == n.role.raw() && !flat::contains(t.nodes[y].b_label, c))
          return SiDet{RuleKind::ForallTrans, x, y, c, c, true};
      NodeId p = t.nodes[x].parent;
      if (p != kNoNode && t.nodes[x].in_role_raw == inv(n.role).raw() &&
          !flat::contains(t.nodes[p].l_label, c))
        return SiDet{RuleKind::ForallTrans, x, p, c, c, false};
    }
  return std::nullopt;
}

struct SiDisj {
  NodeId x;
  ConceptId c;
  std::vector<ConceptId> alts;
};

inline std::optional<SiDisj> si_find_disj(const ConceptStore& store, const SiTree& t) {
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    for (ConceptId c : t.nodes[x].l_label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Or) continue;
      if (flat::contains(t.nodes[x].l_label, n.lhs) || flat::contains(t.nodes[x].l_label, n.rhs))
        continue;
      SiDisj d{x, c, {n.lhs}};
      if (n.rhs != n.lhs) d.alts.push_back(n.rhs);
      return d;
    }
  return std::nullopt;
}

struct SiGen {
  NodeId x;
  ConceptId c;  // the ∃S.C concept
};

inline bool si_other_rule_at(const ConceptStore& store, const SiTree& t,
                             const std::vector<Symbol>& trans, NodeId a) {
  // any non-generating instance whose triggering concept sits at node a
  for (ConceptId c : t.nodes[a].l_label) {
    const ConceptNode& n = store.node(c);
    if (n.kind == ConceptKind::And &&
        (!flat::contains(t.nodes[a].l_label, n.lhs) || !flat::contains(t.nodes[a].l_label, n.rhs)))
      return true;
    if (n.kind == ConceptKind::Or && !flat::contains(t.nodes[a].l_label, n.lhs) &&
        !flat::contains(t.nodes[a].l_label, n.rhs))
      return true;
    if (n.kind == ConceptKind::Forall) {
      for (NodeId y : t.nodes[a].children)
        if (t.nodes[y].in_role_raw == n.role.raw() && !flat::contains(t.nodes[y].b_label, n.lhs))
          return true;
      NodeId p = t.nodes[a].parent;
      if (p != kNoNode && t.nodes[a].in_role_raw == inv(n.role).raw() &&
          !flat::contains(t.nodes[p].l_label, n.lhs))
        return true;
      if (is_transitive_sym(n.role.name, trans)) {
        for (NodeId y : t.nodes[a].children)
          if (t.nodes[y].in_role_raw == n.role.raw() && !flat::contains(t.nodes[y].b_label, c))
            return true;
        if (p != kNoNode && t.nodes[a].in_role_raw == inv(n.role).raw() &&
            !flat::contains(t.nodes[p].l_label, c))
          return true;
      }
    }
  }
  return false;
}

inline std::optional<SiGen> si_find_gen(const ConceptStore& store, const SiTree& t,
                                        const std::vector<Symbol>& trans) {
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    bool ancestors_saturated = true;
    for (NodeId a = t.nodes[x].parent; a != kNoNode && ancestors_saturated; a = t.nodes[a].parent)
      if (si_other_rule_at(store, t, trans, a)) ancestors_saturated = false;
    if (!ancestors_saturated) continue;
    if (si_is_blocked(store, t, x)) continue;
    for (ConceptId c : t.nodes[x].l_label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Exists) continue;
      bool satisfied = false;
      NodeId p = t.nodes[x].parent;
      if (p != kNoNode && t.nodes[x].in_role_raw == inv(n.role).raw() &&
          flat::contains(t.nodes[p].l_label, n.lhs))
        satisfied = true;
      for (NodeId y : t.nodes[x].children)
        if (t.nodes[y].in_role_raw == n.role.raw() && flat::contains(t.nodes[y].l_label, n.lhs))
          satisfied = true;
      if (!satisfied) return SiGen{x, c};
    }
  }
  return std::nullopt;
}

}  // namespace detail

// ── functional rule API ─────────────────────────────────────────────────────

struct SiStep {
  enum class Kind { Fixpoint, Applied, Branch } kind = Kind::Fixpoint;
  std::vector<SiTree> alternatives;  // Branch only
};

inline void si_add_l(SiTree& t, NodeId x, ConceptId c) { flat::insert(t.nodes[x].l_label, c); }
inline void si_add_lb(SiTree& t, NodeId x, ConceptId c) {
  flat::insert(t.nodes[x].l_label, c);
  flat::insert(t.nodes[x].b_label, c);
}

// Fires one Fig. 3 instance: deterministic rules mutate the tree, a ⊔
// instance returns one tree per alternative.
inline SiStep si_apply_rules(ConceptStore& store, SiTree& t,
                             const std::vector<Symbol>& transitive) {
  if (auto det = detail::si_find_det(store, t, transitive)) {
    if (det->rule == RuleKind::Conj) {
      const ConceptNode& n = store.node(det->c);
      si_add_l(t, det->x, n.lhs);
      si_add_l(t, det->x, n.rhs);
    } else if (det->into_b) {
      si_add_lb(t, det->y, det->add);
    } else {
      si_add_l(t, det->y, det->add);
    }
    return {SiStep::Kind::Applied, {}};
  }
  if (auto disj = detail::si_find_disj(store, t)) {
    SiStep step{SiStep::Kind::Branch, {}};
    for (ConceptId alt : disj->alts) {
      SiTree copy = t;
      si_add_l(copy, disj->x, alt);
      step.alternatives.push_back(std::move(copy));
    }
    return step;
  }
  if (auto gen = detail::si_find_gen(store, t, transitive)) {
    const ConceptNode& n = store.node(gen->c);
    SiNode child;
    child.parent = gen->x;
    child.l_label = child.b_label = {n.lhs};
    child.in_role_raw = n.role.raw();
    child.has_in_role = true;
    child.depth = t.nodes[gen->x].depth + 1;
    child.created_filler = n.lhs;
    NodeId id = static_cast<NodeId>(t.nodes.size());
    t.nodes.push_back(std::move(child));
    t.nodes[gen->x].children.push_back(id);
    return {SiStep::Kind::Applied, {}};
  }
  return {SiStep::Kind::Fixpoint, {}};
}

// ── engines ─────────────────────────────────────────────────────────────────

namespace detail {

inline void si_check_input(ConceptStore& store, ConceptId d) {
  if (!is_nnf(store, d)) throw std::invalid_argument("SI engine: concept must be in NNF");
  for (ConceptId c : subconcepts(store, d))
    if (is_number_restriction(store.node(c).kind))
      throw std::invalid_argument("SI engine: number restrictions are not SI: " +
                                  store.to_sexpr(c));
}

inline std::uint64_t si_path_bound(std::size_t m) {
  std::uint64_t mm = static_cast<std::uint64_t>(m);
  return std::max<std::uint64_t>(1, mm * mm * mm * mm);  // Lemma 4: m⁴
}

class SiWholeTreeEngine {
public:
  SiWholeTreeEngine(ConceptStore& store, ConceptId d, std::vector<Symbol> transitive,
                    EngineOptions opts)
      : store_(store), goal_(d), trans_(std::move(transitive)), opts_(std::move(opts)) {
    si_check_input(store_, d);
    std::sort(trans_.begin(), trans_.end());
    trans_.erase(std::unique(trans_.begin(), trans_.end()), trans_.end());
    path_bound_ = si_path_bound(subconcepts(store_, d).size());
  }

  SiVerdict decide() {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {goal_};
    t.nodes.push_back(std::move(root));
    stats_ = EngineStats{};
    bool sat = solve(t);
    SiVerdict v;
    v.satisfiable = sat;
    if (sat) v.witness = std::move(t);
    v.stats = stats_;
    return v;
  }

private:
  bool solve(SiTree& t) {
    while (true) {
      if (++stats_.steps > opts_.step_limit)
        throw std::logic_error("SI engine: step limit exceeded");
      for (NodeId x = 0; x < t.nodes.size(); ++x)
        if (si_has_clash(store_, t, x)) return false;
      if (auto det = si_find_det(store_, t, trans_)) {
        stats_.fired[static_cast<int>(det->rule)]++;
        if (det->rule == RuleKind::Conj) {
          const ConceptNode& n = store_.node(det->c);
          si_add_l(t, det->x, n.lhs);
          si_add_l(t, det->x, n.rhs);
        } else if (det->into_b) {
          si_add_lb(t, det->y, det->add);
        } else {
          si_add_l(t, det->y, det->add);
        }
        check_b_subset(t, det->y);
        continue;
      }
      if (auto disj = si_find_disj(store_, t)) {
        stats_.fired[static_cast<int>(RuleKind::Disj)]++;
        for (std::size_t i = 0; i < disj->alts.size(); ++i) {
          SiTree copy = t;
          si_add_l(copy, disj->x, disj->alts[i]);
          if (solve(copy)) {
            t = std::move(copy);
            return true;
          }
          stats_.backtracks++;
        }
        return false;
      }
      if (auto gen = si_find_gen(store_, t, trans_)) {
        stats_.fired[static_cast<int>(RuleKind::Exists)]++;
        const ConceptNode& n = store_.node(gen->c);
        SiNode child;
        child.parent = gen->x;
        child.l_label = child.b_label = {n.lhs};
        child.in_role_raw = n.role.raw();
        child.has_in_role = true;
        child.depth = t.nodes[gen->x].depth + 1;
        child.created_filler = n.lhs;
        if (static_cast<std::uint64_t>(child.depth) + 1 > path_bound_)
          throw BoundViolation("SI path length bound m^4 exceeded");
        NodeId id = static_cast<NodeId>(t.nodes.size());
        stats_.max_depth = std::max(stats_.max_depth, child.depth);
        t.nodes.push_back(std::move(child));
        t.nodes[gen->x].children.push_back(id);
        if (opts_.trace)
          opts_.trace({stats_.steps, TraceEvent::Kind::NodeCreated, RuleKind::Exists, id, gen->x,
                       store_.node(gen->c).lhs});
        continue;
      }
      return true;  // complete and clash-free
    }
  }

  void check_b_subset(const SiTree& t, NodeId x) {
    assert(std::includes(t.nodes[x].l_label.begin(), t.nodes[x].l_label.end(),
                         t.nodes[x].b_label.begin(), t.nodes[x].b_label.end()));
    (void)t;
    (void)x;
  }

  ConceptStore& store_;
  ConceptId goal_;
  std::vector<Symbol> trans_;
  EngineOptions opts_;
  std::uint64_t path_bound_;
  EngineStats stats_;
};

// Depth-first trace engine with reset-restart.  Only the current
// root-to-active-node path is live; verified sibling subtrees are reduced to
// a pass bit.  A case-2' application into the predecessor truncates the path
// below it and restarts that node's generation with fresh node ids.
class SiTraceEngine {
public:
  SiTraceEngine(ConceptStore& store, ConceptId d, std::vector<Symbol> transitive,
                EngineOptions opts)
      : store_(store), goal_(d), trans_(std::move(transitive)), opts_(std::move(opts)) {
    si_check_input(store_, d);
    std::sort(trans_.begin(), trans_.end());
    trans_.erase(std::unique(trans_.begin(), trans_.end()), trans_.end());
    path_bound_ = si_path_bound(subconcepts(store_, d).size());
  }

  SiVerdict decide() {
    stats_ = EngineStats{};
    next_id_ = 0;
    path_.clear();
    Frame root;
    root.id = fresh_id();
    root.l_label = root.b_label = {goal_};
    path_.push_back(std::move(root));
    Outcome out = run_node(0);
    assert(out != Outcome::Reset);  // the root has no predecessor
    SiVerdict v;
    v.satisfiable = out == Outcome::Sat;
    v.stats = stats_;
    return v;
  }

private:
  struct Frame {
    NodeId id = kNoNode;
    std::vector<ConceptId> l_label, b_label;
    std::uint32_t in_role_raw = 0;
    bool has_in_role = false;
  };

  enum class Outcome { Sat, Clash, Reset };

  NodeId fresh_id() { return next_id_++; }

  void bump() {
    if (++stats_.steps > opts_.step_limit)
      throw std::logic_error("SI trace engine: step limit exceeded");
  }

  bool blocked(std::size_t i) const {
    if (i == 0) return false;
    return si_blocked_on_path(
        store_, i + 1,
        [&](std::size_t k) -> const std::vector<ConceptId>& { return path_[k].l_label; },
        [&](std::size_t k) -> const std::vector<ConceptId>& { return path_[k].b_label; },
        [&](std::size_t k) { return Role::from_raw(path_[k].in_role_raw); });
  }

  // ⊓ plus the four ∀/∀₊ cases that touch frame i.  Case 2' mutates the
  // predecessor and reports the reset target.
  Outcome saturate(std::size_t i) {
    Frame& f = path_[i];
    bool changed = true;
    while (changed) {
      changed = false;
      bump();
      for (ConceptId c : std::vector<ConceptId>(f.l_label)) {
        const ConceptNode& n = store_.node(c);
        if (n.kind == ConceptKind::And) {
          bool added = flat::insert(f.l_label, n.lhs);
          added |= flat::insert(f.l_label, n.rhs);
          if (added) {
            stats_.fired[static_cast<int>(RuleKind::Conj)]++;
            changed = true;
          }
        }
      }
      if (i > 0) {
        Frame& parent = path_[i - 1];
        // pull: ∀/∀₊ instances at the parent targeting this successor
        for (ConceptId c : std::vector<ConceptId>(parent.l_label)) {
          const ConceptNode& n = store_.node(c);
          if (n.kind != ConceptKind::Forall) continue;
          if (f.in_role_raw == n.role.raw()) {
            if (!flat::contains(f.b_label, n.lhs)) {
              flat::insert(f.l_label, n.lhs);
              flat::insert(f.b_label, n.lhs);
              stats_.fired[static_cast<int>(RuleKind::Forall)]++;
              changed = true;
            }
            if (is_transitive_sym(n.role.name, trans_) && !flat::contains(f.b_label, c)) {
              flat::insert(f.l_label, c);
              flat::insert(f.b_label, c);
              stats_.fired[static_cast<int>(RuleKind::ForallTrans)]++;
              changed = true;
            }
          }
        }
        // push (case 2'): ∀/∀₊ instances here targeting the predecessor
        for (ConceptId c : f.l_label) {
          const ConceptNode& n = store_.node(c);
          if (n.kind != ConceptKind::Forall) continue;
          if (f.in_role_raw != inv(n.role).raw()) continue;
          if (!flat::contains(parent.l_label, n.lhs)) {
            flat::insert(parent.l_label, n.lhs);
            stats_.fired[static_cast<int>(RuleKind::Forall)]++;
            return Outcome::Reset;  // target i-1
          }
          if (is_transitive_sym(n.role.name, trans_) && !flat::contains(parent.l_label, c)) {
            flat::insert(parent.l_label, c);
            stats_.fired[static_cast<int>(RuleKind::ForallTrans)]++;
            return Outcome::Reset;  // target i-1
          }
        }
      }
      for (ConceptId c : f.l_label) {
        const ConceptNode& n = store_.node(c);
        if (n.kind == ConceptKind::Bottom) return Outcome::Clash;
        if (n.kind == ConceptKind::Not && flat::contains(f.l_label, n.lhs)) return Outcome::Clash;
      }
    }
    return Outcome::Sat;
  }

  // Verifies the subtree rooted at frame i.  On entry and on every exit the
  // path ends at frame i.  Reset outcomes carry reset_target_.
  Outcome run_node(std::size_t i) {
    while (true) {  // restart point for resets targeting this node
      bump();
      Outcome s = saturate(i);
      if (s == Outcome::Clash) return Outcome::Clash;
      if (s == Outcome::Reset) {
        reset_target_ = i - 1;
        return Outcome::Reset;
      }

      // resolve one pending disjunction, then re-enter
      ConceptId open_disj = kNoConcept;
      for (ConceptId c : path_[i].l_label) {
        const ConceptNode& n = store_.node(c);
        if (n.kind == ConceptKind::Or && !flat::contains(path_[i].l_label, n.lhs) &&
            !flat::contains(path_[i].l_label, n.rhs)) {
          open_disj = c;
          break;
        }
      }
      if (open_disj != kNoConcept) {
        const ConceptNode& n = store_.node(open_disj);
        std::vector<ConceptId> alts{n.lhs};
        if (n.rhs != n.lhs) alts.push_back(n.rhs);
        stats_.fired[static_cast<int>(RuleKind::Disj)]++;
        for (ConceptId alt : alts) {
          auto saved_l = path_[i].l_label;
          auto saved_b = path_[i].b_label;
          flat::insert(path_[i].l_label, alt);
          Outcome r = run_node(i);
          if (r != Outcome::Clash) return r;
          stats_.backtracks++;
          path_[i].l_label = std::move(saved_l);
          path_[i].b_label = std::move(saved_b);
        }
        return Outcome::Clash;
      }

      if (blocked(i)) return Outcome::Sat;

      // generation: one fresh child per unsatisfied ∃, depth-first
      std::vector<ConceptId> exists;
      for (ConceptId c : path_[i].l_label) {
        const ConceptNode& n = store_.node(c);
        if (n.kind != ConceptKind::Exists) continue;
        bool satisfied_by_parent = i > 0 && path_[i].in_role_raw == inv(n.role).raw() &&
                                   flat::contains(path_[i - 1].l_label, n.lhs);
        if (!satisfied_by_parent) exists.push_back(c);
      }
      bool reset_here = false;
      for (ConceptId c : exists) {
        const ConceptNode& n = store_.node(c);
        stats_.fired[static_cast<int>(RuleKind::Exists)]++;
        Frame child;
        child.id = fresh_id();
        child.l_label = child.b_label = {n.lhs};
        child.in_role_raw = n.role.raw();
        child.has_in_role = true;
        if (static_cast<std::uint64_t>(path_.size()) + 1 > path_bound_)
          throw BoundViolation("SI path length bound m^4 exceeded");
        stats_.max_depth =
            std::max<std::uint32_t>(stats_.max_depth, static_cast<std::uint32_t>(path_.size()));
        if (opts_.trace)
          opts_.trace({stats_.steps, TraceEvent::Kind::NodeCreated, RuleKind::Exists, child.id,
                       path_[i].id, n.lhs});
        path_.push_back(std::move(child));
        Outcome r = run_node(i + 1);
        path_.pop_back();
        if (r == Outcome::Sat) continue;
        if (r == Outcome::Clash) return Outcome::Clash;
        // reset: truncation already happened by unwinding to here
        if (reset_target_ == i) {
          stats_.resets++;
          if (opts_.trace)
            opts_.trace({stats_.steps, TraceEvent::Kind::Reset, RuleKind::Forall, path_[i].id,
                         kNoNode, kNoConcept});
          reset_here = true;
          break;
        }
        return Outcome::Reset;  // keep unwinding
      }
      if (reset_here) continue;  // restart this node's generation
      return Outcome::Sat;
    }
  }

  ConceptStore& store_;
  ConceptId goal_;
  std::vector<Symbol> trans_;
  EngineOptions opts_;
  std::uint64_t path_bound_ = 1;
  std::vector<Frame> path_;
  NodeId next_id_ = 0;
  std::size_t reset_target_ = 0;
  EngineStats stats_;
};

}  // namespace detail

// SAT iff some branch yields a complete clash-free SiTree.  Pre: d in NNF,
// no number restrictions (throws std::invalid_argument otherwise); role
// hierarchies are unrepresentable here by construction.
inline SiVerdict si_decide_sat(ConceptStore& store, ConceptId d,
                               const std::vector<Symbol>& transitive, EngineOptions opts = {}) {
  return detail::SiWholeTreeEngine(store, d, transitive, std::move(opts)).decide();
}

// Same answers as si_decide_sat; additionally obeys the reset-restart
// discipline and keeps only the current path live.
inline SiVerdict si_decide_sat_trace(ConceptStore& store, ConceptId d,
                                     const std::vector<Symbol>& transitive,
                                     EngineOptions opts = {}) {
  return detail::SiTraceEngine(store, d, transitive, std::move(opts)).decide();
}

}  // namespace dlsat
