// ============================================================================
// dlsat/tableau.hpp — abstract tableaux: validation and bounded unravelling
// ============================================================================
//
// A TableauStructure is the abstract witness object whose existence is
// equivalent to satisfiability: individuals, concept labels inside clos(D),
// and one edge relation per role.  validate_tableau checks the eleven
// defining properties (SI mode checks 1-7 with ⊑* the identity).
//
// unravel_witness rebuilds a bounded prefix of the tableau induced by a
// complete clash-free completion tree: individuals are paths of node pairs
// x/x', where a blocked successor re-enters the path through its blocker.
// The full structure is infinite whenever blocking occurs, so the prefix is
// truncated at a depth budget and the existential properties (5 and 10) are
// exempt exactly on the frontier.
//
// ============================================================================

#pragma once

#include <optional>

#include "dlsat/completion.hpp"
#include "dlsat/interpretation.hpp"
#include "dlsat/normal.hpp"
#include "dlsat/shiq.hpp"

namespace dlsat {

struct TableauStructure {
  std::uint32_t size = 0;
  std::vector<std::vector<ConceptId>> labels;           // sorted per individual
  std::map<std::uint32_t, std::set<DomainPair>> edges;  // raw role id -> pairs

  bool edge(Role r, std::uint32_t x, std::uint32_t y) const {
    auto it = edges.find(r.raw());
    return it != edges.end() && it->second.count({x, y}) != 0;
  }
  void add_edge(Role r, std::uint32_t x, std::uint32_t y) { edges[r.raw()].insert({x, y}); }
};

struct TableauReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

enum class TableauMode { Shiq, Si };

// Checks the Definition-3 properties.  `frontier` individuals are exempt
// from the witnessing properties 5 and 10 (used for truncated unravellings).
inline TableauReport validate_tableau(ConceptStore& store, const TableauStructure& t, ConceptId d,
                                      const RoleBox& rbox, TableauMode mode = TableauMode::Shiq,
                                      const std::vector<std::uint32_t>& frontier = {}) {
  TableauReport rep;
  auto clos = closure(store, d);
  auto roles = problem_roles(store, clos, rbox);
  auto at = [&](std::uint32_t s) -> const std::vector<ConceptId>& { return t.labels[s]; };
  auto in_frontier = [&](std::uint32_t s) { return flat::contains(frontier, s); };
  auto counted = [&](std::uint32_t s, Role role, ConceptId c) {
    std::uint32_t n = 0;
    for (std::uint32_t y = 0; y < t.size; ++y)
      if (t.edge(role, s, y) && flat::contains(at(y), c)) ++n;
    return n;
  };

  bool goal_found = false;
  for (std::uint32_t s = 0; s < t.size; ++s)
    if (flat::contains(at(s), d)) goal_found = true;
  if (!goal_found) rep.fail("goal concept missing from every label");

  for (const auto& [raw, pairs] : t.edges)
    if (!flat::contains(roles, raw))
      rep.fail("edge relation for role outside R_D: " + store.role_sexpr(Role::from_raw(raw)));

  for (std::uint32_t s = 0; s < t.size; ++s) {
    for (ConceptId c : at(s)) {
      const ConceptNode& n = store.node(c);
      if (flat::contains(at(s), store.make_not(c)))
        rep.fail("property 1 at " + std::to_string(s) + ": " + store.to_sexpr(c) +
                 " with its negation");
      switch (n.kind) {
        case ConceptKind::And:
          if (!flat::contains(at(s), n.lhs) || !flat::contains(at(s), n.rhs))
            rep.fail("property 2 at " + std::to_string(s) + ": " + store.to_sexpr(c));
          break;
        case ConceptKind::Or:
          if (!flat::contains(at(s), n.lhs) && !flat::contains(at(s), n.rhs))
            rep.fail("property 3 at " + std::to_string(s) + ": " + store.to_sexpr(c));
          break;
        case ConceptKind::Forall: {
          for (std::uint32_t y = 0; y < t.size; ++y) {
            if (t.edge(n.role, s, y) && !flat::contains(at(y), n.lhs))
              rep.fail("property 4 at " + std::to_string(s) + "->" + std::to_string(y) + ": " +
                       store.to_sexpr(c));
            for (std::uint32_t raw : roles) {
              Role r = Role::from_raw(raw);
              if (mode == TableauMode::Si && !(r == n.role)) continue;
              if (!is_transitive(r, rbox) || !rbox.subsumed(r, n.role)) continue;
              if (t.edge(r, s, y) && !flat::contains(at(y), store.make_forall(r, n.lhs)))
                rep.fail("property 6 at " + std::to_string(s) + "->" + std::to_string(y) + ": " +
                         store.to_sexpr(c) + " via " + store.role_sexpr(r));
            }
          }
          break;
        }
        case ConceptKind::Exists: {
          if (in_frontier(s)) break;
          bool witnessed = false;
          for (std::uint32_t y = 0; y < t.size && !witnessed; ++y)
            if (t.edge(n.role, s, y) && flat::contains(at(y), n.lhs)) witnessed = true;
          if (!witnessed) rep.fail("property 5 at " + std::to_string(s) + ": " + store.to_sexpr(c));
          break;
        }
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: {
          if (mode == TableauMode::Si) break;
          std::uint32_t count = counted(s, n.role, n.lhs);
          if (n.kind == ConceptKind::AtMost && count > n.num)
            rep.fail("property 9 at " + std::to_string(s) + ": " + store.to_sexpr(c));
          if (n.kind == ConceptKind::AtLeast && !in_frontier(s) && count < n.num)
            rep.fail("property 10 at " + std::to_string(s) + ": " + store.to_sexpr(c));
          ConceptId neg = nnf_neg(store, n.lhs);
          for (std::uint32_t y = 0; y < t.size; ++y)
            if (t.edge(n.role, s, y) && !flat::contains(at(y), n.lhs) &&
                !flat::contains(at(y), neg))
              rep.fail("property 11 at " + std::to_string(s) + "->" + std::to_string(y) + ": " +
                       store.to_sexpr(c));
          break;
        }
        default: break;
      }
    }
  }

  // properties 7 and 8: edge symmetry and hierarchy monotonicity
  for (std::uint32_t raw : roles) {
    Role r = Role::from_raw(raw);
    for (std::uint32_t x = 0; x < t.size; ++x)
      for (std::uint32_t y = 0; y < t.size; ++y) {
        if (t.edge(r, x, y) != t.edge(inv(r), y, x)) {
          if (t.edge(r, x, y))
            rep.fail("property 7: <" + std::to_string(x) + "," + std::to_string(y) + "> in E(" +
                     store.role_sexpr(r) + ") but converse missing");
        }
        if (mode == TableauMode::Shiq && t.edge(r, x, y)) {
          for (std::uint32_t raw2 : roles) {
            Role s = Role::from_raw(raw2);
            if (rbox.subsumed(r, s) && !t.edge(s, x, y))
              rep.fail("property 8: E(" + store.role_sexpr(r) + ") not within E(" +
                       store.role_sexpr(s) + ")");
          }
        }
      }
  }
  return rep;
}

// The model → tableau direction: individuals are domain elements, labels the
// satisfied closure members, edges the (inverse-completed) role extensions.
inline TableauStructure model_to_tableau(ConceptStore& store, const Interpretation& m, ConceptId d,
                                         const RoleBox& rbox) {
  TableauStructure t;
  t.size = m.size;
  auto clos = closure(store, d);
  // the ∀R.C concepts demanded by property 6 live just outside clos(D)
  auto uni = label_universe(store, clos, rbox, problem_roles(store, clos, rbox));
  t.labels.resize(m.size);
  for (ConceptId c : uni) {
    auto v = eval_concept(store, m, c);
    for (std::uint32_t x = 0; x < m.size; ++x)
      if (v[x]) flat::insert(t.labels[x], c);
  }
  for (std::uint32_t raw : problem_roles(store, clos, rbox)) {
    Role r = Role::from_raw(raw);
    t.edges[raw];  // materialise even if empty
    for (std::uint32_t x = 0; x < m.size; ++x)
      for (std::uint32_t y = 0; y < m.size; ++y)
        if (m.role_holds(r, x, y)) t.add_edge(r, x, y);
  }
  return t;
}

// ── bounded unravelling ─────────────────────────────────────────────────────

struct UnravelResult {
  TableauStructure structure;
  std::vector<std::uint32_t> frontier;  // individuals at exactly the depth budget
  std::vector<std::uint32_t> depths;
};

// Largest distance between a directly blocked node and its blocker, if any.
inline std::optional<std::uint32_t> block_distance(const CompletionTree& tree) {
  std::optional<std::uint32_t> best;
  for (NodeId x = 0; x < tree.nodes.size(); ++x) {
    BlockInfo bi = block_info(tree, x);
    if (bi.status != BlockStatus::DirectlyBlocked) continue;
    std::uint32_t dist = tree.nodes[x].depth - tree.nodes[bi.blocker].depth;
    best = std::max(best.value_or(0), dist);
  }
  return best;
}

// Builds the Paths(T) prefix up to depth_budget edges:
//   [root/root] is a path; for a path p and successor z of Tail(p):
//     z unblocked          -> [p | z/z]
//     z directly blocked   -> [p | blocker(z)/z]
//     z indirectly blocked -> no extension
// Labels come from Tail, edges from the successor half x'.  Throws if the
// tree is not a valid complete clash-free witness.
inline UnravelResult unravel_witness(ConceptStore& store, const CompletionTree& tree, ConceptId d,
                                     const RoleBox& rbox, std::uint32_t depth_budget) {
  if (auto rep = validate_completion_tree(store, tree, d, rbox); !rep.ok)
    throw std::invalid_argument("unravel_witness: tree is not a valid witness: " + rep.message);

  auto clos = closure(store, d);
  auto roles = problem_roles(store, clos, rbox);

  struct PathEntry {
    std::uint32_t parent;
    NodeId tail, tail_prime;
    std::uint32_t depth;
  };
  std::vector<PathEntry> paths{{0, tree.root(), tree.root(), 0}};

  UnravelResult out;
  out.structure.labels.push_back(tree.nodes[tree.root()].label);
  out.depths.push_back(0);
  for (std::uint32_t raw : roles) out.structure.edges[raw];

  for (std::uint32_t p = 0; p < paths.size(); ++p) {
    if (paths[p].depth >= depth_budget) continue;
    NodeId tail = paths[p].tail;
    for (NodeId z : tree.nodes[tail].children) {
      BlockInfo bi = block_info(tree, z);
      if (bi.status == BlockStatus::IndirectlyBlocked) continue;
      NodeId x = bi.status == BlockStatus::DirectlyBlocked ? bi.blocker : z;
      std::uint32_t q = static_cast<std::uint32_t>(paths.size());
      paths.push_back({p, x, z, paths[p].depth + 1});
      out.structure.labels.push_back(tree.nodes[x].label);
      out.depths.push_back(paths[q].depth);
      // x' = z decides the edges in both directions
      for (std::uint32_t raw : roles) {
        Role r = Role::from_raw(raw);
        if (is_r_successor(tree, z, r, rbox)) out.structure.add_edge(r, p, q);
        if (is_r_successor(tree, z, inv(r), rbox)) out.structure.add_edge(r, q, p);
      }
    }
  }
  out.structure.size = static_cast<std::uint32_t>(paths.size());
  for (std::uint32_t p = 0; p < paths.size(); ++p)
    if (paths[p].depth == depth_budget) out.frontier.push_back(p);
  return out;
}

}  // namespace dlsat
