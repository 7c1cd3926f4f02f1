// ============================================================================
// dlsat/completion.hpp — completion trees: structure, neighbours, blocking,
// clash detection
// ============================================================================
//
// The working structure of the tableau engine.  Nodes are labelled with
// concept sets L(x) and each non-root node carries the label of its incoming
// edge L(<parent,x>), a *set* of roles (the ≤-rule may empty it, which makes
// the node indirectly blocked).  Explicit inequalities live in `distinct`,
// stored one-sided as (min,max) pairs and symmetrised on query.
//
// Blocking is evaluated from scratch on demand ("dynamic blocking"): a block
// is whatever the current labels say it is, so label growth establishes and
// breaks blocks without any bookkeeping.
//
// ============================================================================

#pragma once

#include <utility>
#include <vector>

#include "dlsat/rolebox.hpp"
#include "dlsat/syntax.hpp"
#include "dlsat/trace.hpp"

namespace dlsat {

struct TreeNode {
  NodeId parent = kNoNode;
  std::vector<NodeId> children;            // creation order
  std::vector<ConceptId> label;            // L(x), sorted
  std::vector<std::uint32_t> edge_roles;   // L(<parent,x>) as raw role ids, sorted
  std::uint32_t depth = 0;
  ConceptId created_for = kNoConcept;      // the ∃/≥ concept that generated this node
};

struct CompletionTree {
  std::vector<TreeNode> nodes;
  std::vector<std::pair<NodeId, NodeId>> distinct;  // sorted (min,max) pairs

  NodeId root() const { return 0; }

  NodeId add_root(ConceptId d) {
    TreeNode n;
    n.label.push_back(d);
    nodes.push_back(std::move(n));
    return 0;
  }

  NodeId add_child(NodeId parent, std::uint32_t edge_role_raw, ConceptId label_concept,
                   ConceptId created_for) {
    TreeNode n;
    n.parent = parent;
    n.edge_roles.push_back(edge_role_raw);
    n.label.push_back(label_concept);
    n.depth = nodes[parent].depth + 1;
    n.created_for = created_for;
    NodeId id = static_cast<NodeId>(nodes.size());
    nodes.push_back(std::move(n));
    nodes[parent].children.push_back(id);
    return id;
  }

  bool is_distinct(NodeId a, NodeId b) const {
    if (a == b) return false;
    auto p = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    return std::binary_search(distinct.begin(), distinct.end(), p);
  }

  // Returns true if the pair was new.
  bool add_distinct(NodeId a, NodeId b) {
    assert(a != b);
    auto p = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    return flat::insert(distinct, p);
  }

  bool is_ancestor(NodeId anc, NodeId x) const {
    for (NodeId v = nodes[x].parent; v != kNoNode; v = nodes[v].parent)
      if (v == anc) return true;
    return false;
  }

  std::vector<NodeId> path_from_root(NodeId x) const {
    std::vector<NodeId> path;
    for (NodeId v = x; v != kNoNode; v = nodes[v].parent) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

// ── neighbours ──────────────────────────────────────────────────────────────
// y is an R-successor of x iff y is a child of x and some S ∈ L(<x,y>) has
// S ⊑* R; y is an R-neighbour of x iff y is an R-successor of x or x is an
// Inv(R)-successor of y.

inline bool is_r_successor(const CompletionTree& t, NodeId child, Role r, const RoleBox& rbox) {
  for (std::uint32_t raw : t.nodes[child].edge_roles)
    if (rbox.subsumed(Role::from_raw(raw), r)) return true;
  return false;
}

inline std::vector<NodeId> neighbours(const CompletionTree& t, NodeId x, Role r,
                                      const RoleBox& rbox) {
  std::vector<NodeId> out;
  NodeId p = t.nodes[x].parent;
  if (p != kNoNode && is_r_successor(t, x, inv(r), rbox)) out.push_back(p);
  for (NodeId c : t.nodes[x].children)
    if (is_r_successor(t, c, r, rbox)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

// ── blocking ────────────────────────────────────────────────────────────────

enum class BlockStatus : std::uint8_t { NotBlocked, DirectlyBlocked, IndirectlyBlocked };

struct BlockInfo {
  BlockStatus status = BlockStatus::NotBlocked;
  NodeId blocker = kNoNode;  // for DirectlyBlocked
  bool blocked() const { return status != BlockStatus::NotBlocked; }
};

// Pair-wise blocking (nodes x', x vs y', y): x is directly blocked iff none
// of its ancestors is blocked and there are ancestors x', y, y' with
//   x successor of x', y successor of y',
//   L(x) = L(y), L(x') = L(y'), L(<x',x>) = L(<y',y>).
// Indirectly blocked iff an ancestor is blocked or the incoming edge label
// is empty.  The root and its children can never be blocked (the candidate
// pair needs two ancestor generations).
inline BlockInfo block_info(const CompletionTree& t, NodeId x) {
  std::vector<NodeId> path = t.path_from_root(x);
  std::vector<BlockInfo> status(path.size());
  for (std::size_t i = 1; i < path.size(); ++i) {
    NodeId v = path[i];
    if (status[i - 1].blocked()) {
      status[i] = {BlockStatus::IndirectlyBlocked, kNoNode};
      continue;
    }
    if (t.nodes[v].edge_roles.empty()) {
      status[i] = {BlockStatus::IndirectlyBlocked, kNoNode};
      continue;
    }
    for (std::size_t j = 1; j + 1 < path.size() && j < i; ++j) {
      NodeId y = path[j], yp = path[j - 1], vp = path[i - 1];
      if (t.nodes[v].label == t.nodes[y].label && t.nodes[vp].label == t.nodes[yp].label &&
          t.nodes[v].edge_roles == t.nodes[y].edge_roles) {
        status[i] = {BlockStatus::DirectlyBlocked, y};
        break;
      }
    }
  }
  return status.back();
}

inline bool is_blocked(const CompletionTree& t, NodeId x) { return block_info(t, x).blocked(); }
inline bool is_indirectly_blocked(const CompletionTree& t, NodeId x) {
  return block_info(t, x).status == BlockStatus::IndirectlyBlocked;
}

// ── clash ───────────────────────────────────────────────────────────────────

// True iff `candidates` contains k pairwise-distinct (w.r.t. ≠) nodes.
inline bool has_distinct_clique(const CompletionTree& t, const std::vector<NodeId>& candidates,
                                std::size_t k, std::vector<NodeId>& chosen, std::size_t from = 0) {
  if (chosen.size() >= k) return true;
  for (std::size_t i = from; i < candidates.size(); ++i) {
    NodeId c = candidates[i];
    bool ok = true;
    for (NodeId u : chosen)
      if (!t.is_distinct(u, c)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(c);
    if (has_distinct_clique(t, candidates, k, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

inline bool has_distinct_clique(const CompletionTree& t, const std::vector<NodeId>& candidates,
                                std::size_t k) {
  if (candidates.size() < k) return false;
  std::vector<NodeId> chosen;
  return has_distinct_clique(t, candidates, k, chosen);
}

// S^T(x,C): the S-neighbours of x whose label contains C.
inline std::vector<NodeId> counted_neighbours(const CompletionTree& t, NodeId x, Role s,
                                              ConceptId c, const RoleBox& rbox) {
  std::vector<NodeId> out;
  for (NodeId y : neighbours(t, x, s, rbox))
    if (flat::contains(t.nodes[y].label, c)) out.push_back(y);
  return out;
}

// A label clashes iff it contains {A, ¬A} for some atom A, or ⊥, or some
// (≤ n S C) with n+1 pairwise-≠ S-neighbours all labelled C.  The ⊥ case is
// not in the paper (its grammar has no ⊥) but is forced once ⊥ is a
// first-class NNF output: the choose-rule can insert ~⊤ = ⊥ into labels.
inline bool has_clash(const ConceptStore& store, const CompletionTree& t, NodeId x,
                      const RoleBox& rbox) {
  const auto& label = t.nodes[x].label;
  for (ConceptId c : label) {
    const ConceptNode& n = store.node(c);
    if (n.kind == ConceptKind::Bottom) return true;
    if (n.kind == ConceptKind::Not && flat::contains(label, n.lhs)) return true;
    if (n.kind == ConceptKind::AtMost) {
      auto cand = counted_neighbours(t, x, n.role, n.lhs, rbox);
      if (has_distinct_clique(t, cand, n.num + 1)) return true;
    }
  }
  return false;
}

inline NodeId find_clash(const ConceptStore& store, const CompletionTree& t, const RoleBox& rbox) {
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    if (has_clash(store, t, x, rbox)) return x;
  return kNoNode;
}

}  // namespace dlsat
