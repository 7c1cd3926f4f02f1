// ============================================================================
// dlsat/dot.hpp — Graphviz output for completion trees and traces
// ============================================================================
// Deterministic digraphs: nodes emitted in id order, labels listed in the
// (ordered) label sets.  Blocked nodes are filled grey with a dotted edge to
// their blocker; edges whose label was emptied by the ≤-rule are dashed.
// SI trees show B separately from L; SI reset events become numbered note
// nodes.

#pragma once

#include <sstream>

#include "dlsat/completion.hpp"
#include "dlsat/si.hpp"
#include "dlsat/tableau.hpp"

namespace dlsat {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string join_concepts(const ConceptStore& store, const std::vector<ConceptId>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += store.to_sexpr(cs[i]);
  }
  return out;
}

}  // namespace detail

inline std::string emit_dot(const ConceptStore& store, const CompletionTree& t,
                            const RoleBox& rbox) {
  std::ostringstream out;
  out << "digraph completion {\n  node [shape=box fontname=\"monospace\"];\n";
  std::vector<BlockInfo> info(t.nodes.size());
  for (NodeId x = 0; x < t.nodes.size(); ++x) info[x] = block_info(t, x);
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    out << "  n" << x << " [label=\"" << x << ": "
        << detail::dot_escape(detail::join_concepts(store, t.nodes[x].label)) << "\"";
    if (info[x].blocked()) {
      out << " style=filled fillcolor=lightgrey";
      if (info[x].status == BlockStatus::DirectlyBlocked) out << " peripheries=2";
    }
    out << "];\n";
  }
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    const TreeNode& n = t.nodes[x];
    if (n.parent == kNoNode) continue;
    if (n.edge_roles.empty()) {
      out << "  n" << n.parent << " -> n" << x << " [style=dashed label=\"(empty)\"];\n";
      continue;
    }
    std::string label;
    for (std::size_t i = 0; i < n.edge_roles.size(); ++i) {
      if (i) label += ", ";
      label += store.role_sexpr(Role::from_raw(n.edge_roles[i]));
    }
    out << "  n" << n.parent << " -> n" << x << " [label=\"" << detail::dot_escape(label)
        << "\"];\n";
  }
  for (NodeId x = 0; x < t.nodes.size(); ++x)
    if (info[x].status == BlockStatus::DirectlyBlocked)
      out << "  n" << x << " -> n" << info[x].blocker
          << " [style=dotted label=\"blocked-by\"];\n";
  // inequalities as undirected dotted constraints
  for (const auto& [a, b] : t.distinct)
    out << "  n" << a << " -> n" << b << " [style=dotted dir=none label=\"distinct\"];\n";
  out << "}\n";
  (void)rbox;
  return out.str();
}

inline std::string emit_dot(const ConceptStore& store, const SiTree& t,
                            const std::vector<TraceEvent>& events = {}) {
  std::ostringstream out;
  out << "digraph si_completion {\n  node [shape=box fontname=\"monospace\"];\n";
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    const SiNode& n = t.nodes[x];
    out << "  n" << x << " [label=\"" << x << "\\nL: "
        << detail::dot_escape(detail::join_concepts(store, n.l_label)) << "\\nB: "
        << detail::dot_escape(detail::join_concepts(store, n.b_label)) << "\"";
    if (si_is_blocked(store, t, x)) out << " style=filled fillcolor=lightgrey";
    out << "];\n";
  }
  for (NodeId x = 0; x < t.nodes.size(); ++x) {
    const SiNode& n = t.nodes[x];
    if (n.parent == kNoNode) continue;
    out << "  n" << n.parent << " -> n" << x << " [label=\""
        << detail::dot_escape(store.role_sexpr(Role::from_raw(n.in_role_raw))) << "\"];\n";
  }
  std::size_t reset_no = 0;
  for (const TraceEvent& e : events) {
    if (e.kind != TraceEvent::Kind::Reset) continue;
    ++reset_no;
    out << "  reset" << reset_no << " [shape=note label=\"reset " << reset_no << " @ node "
        << e.node << " (step " << e.step << ")\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dlsat
