// ============================================================================
// dlsat/shiq.hpp — the SHIQ completion-tree calculus
// ============================================================================
//
// Eight expansion rules over a CompletionTree with pair-wise blocking:
//
//   deterministic:     ⊓, ∀, ∀₊
//   non-deterministic: choose, ⊔            (alternative label additions)
//                      ≤                    (alternative neighbour merges)
//   generating:        ∃, ≥                 (create successors)
//
// Rule priority (the calculus itself fixes none): deterministic rules to
// fixpoint, then choose, then ⊔, then ≤, then the generating rules,
// retesting from the top after every change.  Delaying node creation keeps
// trees small and mirrors the SI engine's explicit saturation guard.
//
// Non-determinism is explored by chronological depth-first backtracking over
// a trail of reversible tree mutations.  Within one branch labels only grow,
// nodes are never removed, and edge labels only grow or become ∅.
//
// The label universe is clos(D) extended with every ∀R.C required by the
// ∀₊-rule (∀S.C ∈ clos(D), Trans(R), R ⊑* S); plain clos(D) is not closed
// under that rule when the hierarchy has proper transitive sub-roles.  The
// termination bounds use m = |universe|: out-degree ≤ m·n_max and path
// length ≤ 2^{2mk}; both are asserted live on every node creation.
//
// ============================================================================

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "dlsat/completion.hpp"
#include "dlsat/normal.hpp"

namespace dlsat {

// ── errors ──────────────────────────────────────────────────────────────────

// Number restriction on a non-simple role: the fragment beyond this guard is
// undecidable, so the engine refuses the input outright.
class NonSimpleRoleError : public std::runtime_error {
public:
  NonSimpleRoleError(std::string role, const std::string& message)
      : std::runtime_error(message), role_(std::move(role)) {}
  const std::string& role() const { return role_; }

private:
  std::string role_;
};

// A live termination-bound assertion fired; indicates an engine bug.
class BoundViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// ── problem-wide derived data ───────────────────────────────────────────────

// R_D: roles occurring in clos(D) and the role box, closed under inverse.
inline std::vector<std::uint32_t> problem_roles(const ConceptStore& store,
                                                const std::vector<ConceptId>& clos,
                                                const RoleBox& rbox) {
  std::vector<Role> roles;
  for (ConceptId c : clos) collect_roles(store, c, roles);
  for (Role r : rbox.universe) flat::insert(roles, r);
  std::vector<std::uint32_t> raws;
  for (Role r : roles) {
    flat::insert(raws, r.raw());
    flat::insert(raws, inv(r).raw());
  }
  return raws;
}

// clos(D) plus the ∀R.C concepts the ∀₊-rule can introduce.
inline std::vector<ConceptId> label_universe(ConceptStore& store,
                                             const std::vector<ConceptId>& clos,
                                             const RoleBox& rbox,
                                             const std::vector<std::uint32_t>& roles) {
  std::vector<ConceptId> uni = clos;
  for (ConceptId c : clos) {
    const ConceptNode& n = store.node(c);
    if (n.kind != ConceptKind::Forall) continue;
    for (std::uint32_t raw : roles) {
      Role r = Role::from_raw(raw);
      if (is_transitive(r, rbox) && rbox.subsumed(r, n.role))
        flat::insert(uni, store.make_forall(r, n.lhs));
    }
  }
  return uni;
}

struct EngineBounds {
  std::uint64_t max_out_degree = 0;
  std::uint64_t max_path_length = 1;  // in nodes, saturated at uint64 max
};

inline EngineBounds compute_bounds(std::size_t universe_size, std::uint32_t n_max,
                                   std::size_t role_count) {
  EngineBounds b;
  std::uint64_t m = universe_size;
  b.max_out_degree = m * std::max<std::uint64_t>(1, n_max);
  std::uint64_t exponent = 2 * m * static_cast<std::uint64_t>(role_count);
  b.max_path_length = exponent >= 63 ? std::numeric_limits<std::uint64_t>::max()
                                     : std::max<std::uint64_t>(1, 1ull << exponent);
  return b;
}

inline EngineBounds engine_bounds(ConceptStore& store, ConceptId d, const RoleBox& rbox) {
  auto clos = closure(store, d);
  auto roles = problem_roles(store, clos, rbox);
  auto uni = label_universe(store, clos, rbox, roles);
  std::uint32_t n_max = 1;
  for (ConceptId c : clos) {
    const ConceptNode& n = store.node(c);
    if (is_number_restriction(n.kind)) n_max = std::max(n_max, n.num);
  }
  return compute_bounds(uni.size(), n_max, roles.size());
}

// ── trail ───────────────────────────────────────────────────────────────────

namespace detail {

struct TrailOp {
  enum class Kind : std::uint8_t { AddLabel, CreateNode, AddEdgeRole, ClearEdge, AddDistinct };
  Kind kind;
  NodeId node = kNoNode;
  NodeId other = kNoNode;
  ConceptId c = kNoConcept;
  std::uint32_t role_raw = 0;
  std::vector<std::uint32_t> saved_edge;
};

// All tree mutations funnel through the editor so the engine can undo them;
// with trail == nullptr it is a plain mutator (used by the functional rule
// API below).
struct TreeEditor {
  CompletionTree& tree;
  std::vector<TrailOp>* trail = nullptr;

  bool add_label(NodeId x, ConceptId c) {
    if (!flat::insert(tree.nodes[x].label, c)) return false;
    if (trail) trail->push_back({TrailOp::Kind::AddLabel, x, kNoNode, c, 0, {}});
    return true;
  }
  NodeId create_child(NodeId x, std::uint32_t role_raw, ConceptId c, ConceptId created_for) {
    NodeId id = tree.add_child(x, role_raw, c, created_for);
    if (trail) trail->push_back({TrailOp::Kind::CreateNode, id, x, kNoConcept, 0, {}});
    return id;
  }
  void add_edge_role(NodeId child, std::uint32_t raw) {
    if (!flat::insert(tree.nodes[child].edge_roles, raw)) return;
    if (trail) trail->push_back({TrailOp::Kind::AddEdgeRole, child, kNoNode, kNoConcept, raw, {}});
  }
  void clear_edge(NodeId child) {
    if (trail)
      trail->push_back({TrailOp::Kind::ClearEdge, child, kNoNode, kNoConcept, 0,
                        tree.nodes[child].edge_roles});
    tree.nodes[child].edge_roles.clear();
  }
  void add_distinct(NodeId a, NodeId b) {
    if (!tree.add_distinct(a, b)) return;
    if (trail) trail->push_back({TrailOp::Kind::AddDistinct, a, b, kNoConcept, 0, {}});
  }

  void undo_to(std::size_t mark) {
    assert(trail);
    while (trail->size() > mark) {
      TrailOp op = std::move(trail->back());
      trail->pop_back();
      switch (op.kind) {
        case TrailOp::Kind::AddLabel: flat::erase(tree.nodes[op.node].label, op.c); break;
        case TrailOp::Kind::CreateNode: {
          // Strict reverse-chronological undo: the node is the newest one
          // and the last child of its parent.
          assert(op.node + 1 == tree.nodes.size());
          auto& siblings = tree.nodes[op.other].children;
          assert(!siblings.empty() && siblings.back() == op.node);
          siblings.pop_back();
          tree.nodes.pop_back();
          break;
        }
        case TrailOp::Kind::AddEdgeRole:
          flat::erase(tree.nodes[op.node].edge_roles, op.role_raw);
          break;
        case TrailOp::Kind::ClearEdge: tree.nodes[op.node].edge_roles = std::move(op.saved_edge); break;
        case TrailOp::Kind::AddDistinct: {
          auto p = op.node < op.other ? std::make_pair(op.node, op.other)
                                      : std::make_pair(op.other, op.node);
          flat::erase(tree.distinct, p);
          break;
        }
      }
    }
  }
};

}  // namespace detail

// ── rule instances ──────────────────────────────────────────────────────────

struct DetInstance {
  RuleKind rule;        // Conj, Forall or ForallTrans
  NodeId x;             // node whose label triggers the rule
  ConceptId c;          // the triggering concept
  NodeId y = kNoNode;   // target (∀/∀₊)
  ConceptId add = kNoConcept;
};

struct AltAdd {
  NodeId target;
  ConceptId add;
};

struct NdInstance {
  RuleKind rule;  // Disj or Choose
  NodeId x;
  ConceptId c;
  std::vector<AltAdd> alts;
};

struct MergePair {
  NodeId y, z;  // merge y into z
};

struct MergeInstance {
  NodeId x;
  ConceptId c;  // the (≤ n S C) concept
  std::vector<MergePair> pairs;
};

struct GenInstance {
  RuleKind rule;  // Exists or AtLeast
  NodeId x;
  ConceptId c;
};

inline std::optional<DetInstance> find_deterministic(ConceptStore& store,
                                                     const CompletionTree& t,
                                                     const RoleBox& rbox,
                                                     const std::vector<std::uint32_t>& roles) {
  // ⊓-rule
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::And) continue;
      if (!flat::contains(t.nodes[x].label, n.lhs) || !flat::contains(t.nodes[x].label, n.rhs))
        return DetInstance{RuleKind::Conj, x, c};
    }
  }
  // ∀-rule
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Forall) continue;
      for (NodeId y : neighbours(t, x, n.role, rbox))
        if (!flat::contains(t.nodes[y].label, n.lhs))
          return DetInstance{RuleKind::Forall, x, c, y, n.lhs};
    }
  }
  // ∀₊-rule: ∀S.C ∈ L(x), Trans(R), R ⊑* S, R-neighbour y without ∀R.C
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Forall) continue;
      for (std::uint32_t raw : roles) {
        Role r = Role::from_raw(raw);
        if (!is_transitive(r, rbox) || !rbox.subsumed(r, n.role)) continue;
        ConceptId push = store.make_forall(r, n.lhs);
        for (NodeId y : neighbours(t, x, r, rbox))
          if (!flat::contains(t.nodes[y].label, push))
            return DetInstance{RuleKind::ForallTrans, x, c, y, push};
      }
    }
  }
  return std::nullopt;
}

// An alternative is dead on arrival when the concept it adds clashes
// atomically with the target label: the branch would be refuted on the very
// next step regardless of anything else.  The engine skips such alternatives
// (keeping one if every alternative is dead, so the clash still surfaces);
// the public rule API reports them all, faithful to the calculus.
inline bool alternative_clashes(ConceptStore& store, const CompletionTree& t,
                                const AltAdd& alt) {
  const ConceptNode& n = store.node(alt.add);
  const auto& label = t.nodes[alt.target].label;
  if (n.kind == ConceptKind::Bottom) return true;
  if (n.kind == ConceptKind::Atom && flat::contains(label, store.make_not(alt.add))) return true;
  if (n.kind == ConceptKind::Not && flat::contains(label, n.lhs)) return true;
  return false;
}

inline void prune_dead_alternatives(ConceptStore& store, const CompletionTree& t,
                                    NdInstance& inst) {
  std::vector<AltAdd> live;
  for (const AltAdd& alt : inst.alts)
    if (!alternative_clashes(store, t, alt)) live.push_back(alt);
  if (live.empty()) live.push_back(inst.alts.front());
  inst.alts = std::move(live);
}

// The non-deterministic and generating finders scan newest nodes first:
// within the fixed rule-type priority this clusters the branch points of one
// root-to-clash path together, so chronological backtracking does not have
// to re-enumerate the choices of unrelated sibling subtrees.
inline std::optional<NdInstance> find_choose(ConceptStore& store, const CompletionTree& t,
                                             const RoleBox& rbox, bool prune_dead = false) {
  for (NodeId x = static_cast<NodeId>(t.nodes.size()); x-- > 0;) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (!is_number_restriction(n.kind)) continue;
      ConceptId neg = nnf_neg(store, n.lhs);
      for (NodeId y : neighbours(t, x, n.role, rbox)) {
        if (flat::contains(t.nodes[y].label, n.lhs) || flat::contains(t.nodes[y].label, neg))
          continue;
        NdInstance inst{RuleKind::Choose, x, c, {}};
        inst.alts.push_back({y, n.lhs});
        if (neg != n.lhs) inst.alts.push_back({y, neg});
        if (prune_dead) prune_dead_alternatives(store, t, inst);
        return inst;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<NdInstance> find_disj(ConceptStore& store, const CompletionTree& t,
                                           bool prune_dead = false) {
  for (NodeId x = static_cast<NodeId>(t.nodes.size()); x-- > 0;) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::Or) continue;
      if (flat::contains(t.nodes[x].label, n.lhs) || flat::contains(t.nodes[x].label, n.rhs))
        continue;
      NdInstance inst{RuleKind::Disj, x, c, {}};
      inst.alts.push_back({x, n.lhs});
      if (n.rhs != n.lhs) inst.alts.push_back({x, n.rhs});
      if (prune_dead) prune_dead_alternatives(store, t, inst);
      return inst;
    }
  }
  return std::nullopt;
}

// ≤-rule candidates.  Pairs (y, z): merge y into z, y not an ancestor of x,
// C in both labels, not y ≠ z.  Enumerated with z-as-ancestor first, then by
// node age, so replays are deterministic.
inline std::optional<MergeInstance> find_merge(const ConceptStore& store, const CompletionTree& t,
                                               const RoleBox& rbox) {
  for (NodeId x = static_cast<NodeId>(t.nodes.size()); x-- > 0;) {
    if (is_indirectly_blocked(t, x)) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind != ConceptKind::AtMost) continue;
      auto counted = counted_neighbours(t, x, n.role, n.lhs, rbox);
      if (counted.size() <= n.num) continue;
      MergeInstance inst{x, c, {}};
      auto eligible = [&](NodeId y, NodeId z) {
        return y != z && !t.is_ancestor(y, x) && !t.is_distinct(y, z);
      };
      // ancestor targets first
      for (NodeId z : counted)
        if (t.is_ancestor(z, x))
          for (NodeId y : counted)
            if (eligible(y, z)) inst.pairs.push_back({y, z});
      for (NodeId z : counted)
        if (!t.is_ancestor(z, x))
          for (NodeId y : counted)
            if (eligible(y, z)) inst.pairs.push_back({y, z});
      if (!inst.pairs.empty()) return inst;
      // all candidate pairs are ≠-separated: the clash check reports this
    }
  }
  return std::nullopt;
}

inline std::optional<GenInstance> find_generating(const ConceptStore& store,
                                                  const CompletionTree& t, const RoleBox& rbox) {
  for (NodeId x = static_cast<NodeId>(t.nodes.size()); x-- > 0;) {
    BlockInfo bi = block_info(t, x);
    if (bi.blocked()) continue;
    for (ConceptId c : t.nodes[x].label) {
      const ConceptNode& n = store.node(c);
      if (n.kind == ConceptKind::Exists) {
        bool satisfied = false;
        for (NodeId y : neighbours(t, x, n.role, rbox))
          if (flat::contains(t.nodes[y].label, n.lhs)) {
            satisfied = true;
            break;
          }
        if (!satisfied) return GenInstance{RuleKind::Exists, x, c};
      } else if (n.kind == ConceptKind::AtLeast && n.num > 0) {
        auto counted = counted_neighbours(t, x, n.role, n.lhs, rbox);
        if (!has_distinct_clique(t, counted, n.num)) return GenInstance{RuleKind::AtLeast, x, c};
      }
    }
  }
  return std::nullopt;
}

// ── rule application ────────────────────────────────────────────────────────

namespace detail {

inline void apply_det(const ConceptStore& store, TreeEditor& ed, const DetInstance& inst) {
  if (inst.rule == RuleKind::Conj) {
    const ConceptNode& n = store.node(inst.c);
    ed.add_label(inst.x, n.lhs);
    ed.add_label(inst.x, n.rhs);
  } else {
    ed.add_label(inst.y, inst.add);
  }
}

// The four ≤-rule steps.  Asserts the ≠-preservation precondition.
inline void apply_merge_pair(TreeEditor& ed, NodeId x, NodeId y, NodeId z) {
  CompletionTree& t = ed.tree;
  assert(!t.is_distinct(y, z));
  assert(!t.is_ancestor(y, x));
  // 1. L(z) ∪= L(y)
  const std::vector<ConceptId> from = t.nodes[y].label;
  for (ConceptId c : from) ed.add_label(z, c);
  // 2. merge the connecting edges
  const std::vector<std::uint32_t> edge_y = t.nodes[y].edge_roles;
  if (t.is_ancestor(z, x)) {
    for (std::uint32_t raw : edge_y) ed.add_edge_role(x, inv(Role::from_raw(raw)).raw());
  } else {
    for (std::uint32_t raw : edge_y) ed.add_edge_role(z, raw);
  }
  // 3. L(<x,y>) → ∅  (y becomes indirectly blocked)
  ed.clear_edge(y);
  // 4. u ≠ z for every u with u ≠ y
  std::vector<NodeId> others;
  for (const auto& [a, b] : t.distinct) {
    if (a == y) others.push_back(b);
    if (b == y) others.push_back(a);
  }
  for (NodeId u : others) ed.add_distinct(u, z);
}

inline void apply_gen(const ConceptStore& store, TreeEditor& ed, const GenInstance& inst) {
  const ConceptNode& n = store.node(inst.c);
  if (inst.rule == RuleKind::Exists) {
    ed.create_child(inst.x, n.role.raw(), n.lhs, inst.c);
  } else {
    std::vector<NodeId> created;
    for (std::uint32_t i = 0; i < n.num; ++i)
      created.push_back(ed.create_child(inst.x, n.role.raw(), n.lhs, inst.c));
    for (std::size_t i = 0; i < created.size(); ++i)
      for (std::size_t j = i + 1; j < created.size(); ++j)
        ed.add_distinct(created[i], created[j]);
  }
}

}  // namespace detail

// ── functional rule API ─────────────────────────────────────────────────────
// Pure-ish variants used by tests and the tree validator: each call fires at
// most one instance.  The engine below shares the same finders/appliers but
// runs them over a trail.

inline bool apply_deterministic(ConceptStore& store, CompletionTree& t, const RoleBox& rbox) {
  std::vector<ConceptId> labelled;
  for (const TreeNode& n : t.nodes)
    for (ConceptId c : n.label) flat::insert(labelled, c);
  auto roles = problem_roles(store, labelled, rbox);
  auto inst = find_deterministic(store, t, rbox, roles);
  if (!inst) return false;
  detail::TreeEditor ed{t};
  detail::apply_det(store, ed, *inst);
  return true;
}

inline std::vector<CompletionTree> apply_nondeterministic(ConceptStore& store,
                                                          const CompletionTree& t,
                                                          const RoleBox& rbox) {
  std::optional<NdInstance> inst = find_choose(store, t, rbox);
  if (!inst) inst = find_disj(store, t);
  std::vector<CompletionTree> out;
  if (!inst) return out;
  for (const AltAdd& alt : inst->alts) {
    CompletionTree copy = t;
    detail::TreeEditor ed{copy};
    ed.add_label(alt.target, alt.add);
    out.push_back(std::move(copy));
  }
  return out;
}

inline bool apply_generating(const ConceptStore& store, CompletionTree& t, const RoleBox& rbox) {
  auto inst = find_generating(store, t, rbox);
  if (!inst) return false;
  detail::TreeEditor ed{t};
  detail::apply_gen(store, ed, *inst);
  return true;
}

inline std::vector<CompletionTree> apply_merge(const ConceptStore& store, const CompletionTree& t,
                                               const RoleBox& rbox) {
  auto inst = find_merge(store, t, rbox);
  std::vector<CompletionTree> out;
  if (!inst) return out;
  for (const MergePair& p : inst->pairs) {
    CompletionTree copy = t;
    detail::TreeEditor ed{copy};
    detail::apply_merge_pair(ed, inst->x, p.y, p.z);
    out.push_back(std::move(copy));
  }
  return out;
}

// ── engine ──────────────────────────────────────────────────────────────────

struct EngineOptions {
  bool enable_choose_rule = true;  // test-only switch; disabling it is unsound
  TraceHook trace;
  std::uint64_t step_limit = 10'000'000;  // internal sanity cap, far beyond any test
};

struct EngineStats {
  std::array<std::uint64_t, kRuleKindCount> fired{};
  std::uint64_t backtracks = 0;
  std::uint64_t resets = 0;  // SI trace mode only
  std::uint32_t max_depth = 0;
  std::uint64_t max_out_degree = 0;
  std::uint64_t steps = 0;
};

struct EngineVerdict {
  bool satisfiable = false;
  CompletionTree witness;  // complete and clash-free iff satisfiable
  EngineStats stats;
};

class ShiqEngine {
public:
  // Pre: d in NNF.  Throws NonSimpleRoleError if clos(d) contains a number
  // restriction on a non-simple role (the undecidable fragment).
  ShiqEngine(ConceptStore& store, ConceptId d, RoleBox rbox, EngineOptions opts = {})
      : store_(store), goal_(d), rbox_(std::move(rbox)), opts_(std::move(opts)) {
    if (!is_nnf(store_, d)) throw std::invalid_argument("ShiqEngine: concept must be in NNF");
    clos_ = closure(store_, d);
    for (ConceptId c : clos_) {
      const ConceptNode& n = store_.node(c);
      if (is_number_restriction(n.kind) && !is_simple(n.role, rbox_))
        throw NonSimpleRoleError(store_.role_name(n.role.name),
                                 "number restriction on non-simple role " +
                                     store_.role_sexpr(n.role) + " in " + store_.to_sexpr(c));
    }
    roles_ = problem_roles(store_, clos_, rbox_);
    universe_ = label_universe(store_, clos_, rbox_, roles_);
    std::uint32_t n_max = 1;
    for (ConceptId c : clos_) {
      const ConceptNode& n = store_.node(c);
      if (is_number_restriction(n.kind)) n_max = std::max(n_max, n.num);
    }
    bounds_ = compute_bounds(universe_.size(), n_max, roles_.size());
  }

  const std::vector<ConceptId>& universe() const { return universe_; }
  const std::vector<ConceptId>& clos() const { return clos_; }
  const EngineBounds& bounds() const { return bounds_; }

  EngineVerdict decide() {
    tree_ = CompletionTree{};
    tree_.add_root(goal_);
    trail_.clear();
    choices_.clear();
    stats_ = EngineStats{};
    detail::TreeEditor ed{tree_, &trail_};

    while (true) {
      bump_step();
      if (find_clash(store_, tree_, rbox_) != kNoNode) {
        if (!backtrack(ed)) return {false, CompletionTree{}, stats_};
        continue;
      }
      if (auto di = find_deterministic(store_, tree_, rbox_, roles_)) {
        fired(di->rule, di->x, di->y, di->c);
        detail::apply_det(store_, ed, *di);
        after_mutation();
        continue;
      }
      if (opts_.enable_choose_rule) {
        if (auto ci = find_choose(store_, tree_, rbox_, true)) {
          push_choice(RuleKind::Choose, ci->x, ci->c, ci->alts, {});
          continue;
        }
      }
      if (auto oi = find_disj(store_, tree_, true)) {
        push_choice(RuleKind::Disj, oi->x, oi->c, oi->alts, {});
        continue;
      }
      if (auto mi = find_merge(store_, tree_, rbox_)) {
        push_choice(RuleKind::AtMost, mi->x, mi->c, {}, mi->pairs);
        continue;
      }
      if (auto gi = find_generating(store_, tree_, rbox_)) {
        fired(gi->rule, gi->x, kNoNode, gi->c);
        std::size_t before = tree_.nodes.size();
        detail::apply_gen(store_, ed, *gi);
        check_bounds_after_creation(gi->x, before);
        after_mutation();
        continue;
      }
      // complete and clash-free
      return {true, tree_, stats_};
    }
  }

private:
  struct Choice {
    std::size_t trail_mark;
    RuleKind rule;
    NodeId x;
    ConceptId c;
    std::vector<AltAdd> adds;
    std::vector<MergePair> pairs;
    std::size_t next = 0;
    std::size_t count() const { return adds.empty() ? pairs.size() : adds.size(); }
  };

  void bump_step() {
    if (++stats_.steps > opts_.step_limit)
      throw std::logic_error("ShiqEngine: step limit exceeded (non-terminating expansion?)");
  }

  void fired(RuleKind rule, NodeId x, NodeId y, ConceptId c) {
    stats_.fired[static_cast<int>(rule)]++;
    if (opts_.trace)
      opts_.trace({stats_.steps, TraceEvent::Kind::RuleFired, rule, x, y, c});
  }

  void push_choice(RuleKind rule, NodeId x, ConceptId c, std::vector<AltAdd> adds,
                   std::vector<MergePair> pairs) {
    choices_.push_back({trail_.size(), rule, x, c, std::move(adds), std::move(pairs)});
    apply_alternative(choices_.back());
  }

  void apply_alternative(Choice& ch) {
    detail::TreeEditor ed{tree_, &trail_};
    fired(ch.rule, ch.x, kNoNode, ch.c);
    if (!ch.adds.empty()) {
      const AltAdd& alt = ch.adds[ch.next];
      ed.add_label(alt.target, alt.add);
    } else {
      const MergePair& p = ch.pairs[ch.next];
      detail::apply_merge_pair(ed, ch.x, p.y, p.z);
    }
    after_mutation();
  }

  bool backtrack(detail::TreeEditor& ed) {
    stats_.backtracks++;
    if (opts_.trace)
      opts_.trace({stats_.steps, TraceEvent::Kind::Backtrack, RuleKind::Conj, kNoNode, kNoNode,
                   kNoConcept});
    while (!choices_.empty()) {
      Choice& ch = choices_.back();
      ed.undo_to(ch.trail_mark);
      if (++ch.next < ch.count()) {
        apply_alternative(ch);
        return true;
      }
      choices_.pop_back();
    }
    return false;
  }

  void check_bounds_after_creation(NodeId parent, std::size_t first_new) {
    std::uint64_t out_degree = tree_.nodes[parent].children.size();
    stats_.max_out_degree = std::max(stats_.max_out_degree, out_degree);
    if (out_degree > bounds_.max_out_degree)
      throw BoundViolation("out-degree bound m*n_max exceeded");
    for (std::size_t i = first_new; i < tree_.nodes.size(); ++i) {
      const TreeNode& n = tree_.nodes[i];
      stats_.max_depth = std::max(stats_.max_depth, n.depth);
      if (static_cast<std::uint64_t>(n.depth) + 1 > bounds_.max_path_length)
        throw BoundViolation("path length bound 2^(2mk) exceeded");
      if (opts_.trace)
        opts_.trace({stats_.steps, TraceEvent::Kind::NodeCreated, RuleKind::Exists,
                     static_cast<NodeId>(i), n.parent, n.created_for});
    }
  }

  // Block establish/break events are derived by diffing statuses; only worth
  // computing when someone listens.
  void after_mutation() {
    if (!opts_.trace) return;
    std::vector<NodeId> blocked;
    for (NodeId x = 0; x < tree_.nodes.size(); ++x) {
      BlockInfo bi = block_info(tree_, x);
      if (bi.status == BlockStatus::DirectlyBlocked) {
        blocked.push_back(x);
        if (!flat::contains(blocked_cache_, x))
          opts_.trace({stats_.steps, TraceEvent::Kind::BlockEstablished, RuleKind::Conj, x,
                       bi.blocker, kNoConcept});
      }
    }
    for (NodeId x : blocked_cache_)
      if (!flat::contains(blocked, x))
        opts_.trace(
            {stats_.steps, TraceEvent::Kind::BlockBroken, RuleKind::Conj, x, kNoNode, kNoConcept});
    blocked_cache_ = std::move(blocked);
  }

  ConceptStore& store_;
  ConceptId goal_;
  RoleBox rbox_;
  EngineOptions opts_;
  std::vector<ConceptId> clos_, universe_;
  std::vector<std::uint32_t> roles_;
  EngineBounds bounds_;
  CompletionTree tree_;
  std::vector<detail::TrailOp> trail_;
  std::vector<Choice> choices_;
  std::vector<NodeId> blocked_cache_;
  EngineStats stats_;
};

inline EngineVerdict decide_sat(ConceptStore& store, ConceptId d, const RoleBox& rbox,
                                EngineOptions opts = {}) {
  return ShiqEngine(store, d, rbox, std::move(opts)).decide();
}

// ── witness validation ──────────────────────────────────────────────────────

struct ValidationReport {
  bool ok = true;
  std::string message;
  NodeId node = kNoNode;
};

// Post-hoc audit of a SAT witness: D ∈ L(root), structural invariants, no
// clash, and no Figure-2 rule applicable.
inline ValidationReport validate_completion_tree(ConceptStore& store, const CompletionTree& t,
                                                 ConceptId d, const RoleBox& rbox) {
  auto fail = [](std::string msg, NodeId n = kNoNode) { return ValidationReport{false, std::move(msg), n}; };
  if (t.nodes.empty()) return fail("empty tree");
  if (!flat::contains(t.nodes[0].label, d)) return fail("goal concept missing from root label", 0);

  auto clos = closure(store, d);
  auto roles = problem_roles(store, clos, rbox);
  auto uni = label_universe(store, clos, rbox, roles);
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    const TreeNode& n = t.nodes[x];
    if (x == 0) {
      if (n.parent != kNoNode || n.depth != 0) return fail("malformed root", x);
    } else {
      if (n.parent == kNoNode || n.parent >= t.nodes.size()) return fail("dangling parent", x);
      if (n.depth != t.nodes[n.parent].depth + 1) return fail("depth mismatch", x);
      const auto& sibs = t.nodes[n.parent].children;
      if (std::find(sibs.begin(), sibs.end(), x) == sibs.end())
        return fail("node missing from parent's child list", x);
    }
    for (ConceptId c : n.label)
      if (!flat::contains(uni, c)) return fail("label concept outside clos(D)", x);
    for (std::uint32_t raw : n.edge_roles)
      if (!flat::contains(roles, raw)) return fail("edge role outside R_D", x);
  }
  for (const auto& [a, b] : t.distinct) {
    if (a == b) return fail("reflexive inequality", a);
    if (a >= t.nodes.size() || b >= t.nodes.size()) return fail("inequality over unknown nodes");
  }

  if (NodeId x = find_clash(store, t, rbox); x != kNoNode) return fail("clash", x);
  if (auto di = find_deterministic(store, t, rbox, roles))
    return fail(std::string("incomplete: ") + rule_name(di->rule) + "-rule applicable", di->x);
  if (auto ci = find_choose(store, t, rbox))
    return fail("incomplete: choose-rule applicable", ci->x);
  if (auto oi = find_disj(store, t)) return fail("incomplete: or-rule applicable", oi->x);
  if (auto mi = find_merge(store, t, rbox))
    return fail("incomplete: at-most-rule applicable", mi->x);
  if (auto gi = find_generating(store, t, rbox))
    return fail(std::string("incomplete: ") + rule_name(gi->rule) + "-rule applicable", gi->x);
  return {};
}

}  // namespace dlsat
