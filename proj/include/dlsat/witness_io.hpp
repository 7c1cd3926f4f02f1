// ============================================================================
// dlsat/witness_io.hpp — JSON persistence for SAT witnesses
// ============================================================================
// A witness file is self-contained: the NNF goal, the role box, and the
// completion tree (labels and roles as s-expression strings), so `validate`
// can re-run the audits without the original knowledge base.

#pragma once

#include <fstream>

#include <json.hpp>

#include "dlsat/completion.hpp"
#include "dlsat/parser.hpp"

namespace dlsat {

struct StoredWitness {
  ConceptId goal = kNoConcept;
  RoleBox rbox;
  CompletionTree tree;
};

namespace detail {

inline nlohmann::json role_json(const ConceptStore& store, Role r) {
  return store.role_sexpr(r);
}

inline Role parse_role_string(ConceptStore& store, const std::string& s) {
  if (!s.empty() && s.front() == '(') {
    // "(inv R)"
    auto start = s.find(' ');
    auto end = s.find(')');
    if (start == std::string::npos || end == std::string::npos || end <= start + 1)
      throw std::runtime_error("bad role string: " + s);
    return store.make_role(s.substr(start + 1, end - start - 1), true);
  }
  return store.make_role(s);
}

}  // namespace detail

inline nlohmann::json witness_to_json(const ConceptStore& store, ConceptId goal,
                                      const RoleBox& rbox, const CompletionTree& tree) {
  nlohmann::json j;
  j["concept"] = store.to_sexpr(goal);
  nlohmann::json rb;
  rb["transitive"] = nlohmann::json::array();
  for (Symbol s : rbox.transitive) rb["transitive"].push_back(store.role_name(s));
  rb["inclusions"] = nlohmann::json::array();
  for (const auto& [r, s] : rbox.inclusions)
    rb["inclusions"].push_back({detail::role_json(store, r), detail::role_json(store, s)});
  j["rbox"] = rb;
  j["nodes"] = nlohmann::json::array();
  for (NodeId x = 0; x < tree.nodes.size(); ++x) {
    const TreeNode& n = tree.nodes[x];
    nlohmann::json node;
    node["id"] = x;
    node["parent"] = n.parent == kNoNode ? -1 : static_cast<int>(n.parent);
    node["edge"] = nlohmann::json::array();
    for (std::uint32_t raw : n.edge_roles)
      node["edge"].push_back(detail::role_json(store, Role::from_raw(raw)));
    node["label"] = nlohmann::json::array();
    for (ConceptId c : n.label) node["label"].push_back(store.to_sexpr(c));
    j["nodes"].push_back(node);
  }
  j["distinct"] = nlohmann::json::array();
  for (const auto& [a, b] : tree.distinct) j["distinct"].push_back({a, b});
  return j;
}

inline StoredWitness witness_from_json(ConceptStore& store, const nlohmann::json& j) {
  StoredWitness w;
  w.goal = parse_concept(store, j.at("concept").get<std::string>());
  std::vector<Symbol> transitive;
  for (const auto& t : j.at("rbox").at("transitive"))
    transitive.push_back(store.role_symbol(t.get<std::string>()));
  std::vector<std::pair<Role, Role>> inclusions;
  for (const auto& pair : j.at("rbox").at("inclusions"))
    inclusions.emplace_back(detail::parse_role_string(store, pair.at(0).get<std::string>()),
                            detail::parse_role_string(store, pair.at(1).get<std::string>()));
  std::vector<Role> mentioned;
  collect_roles(store, w.goal, mentioned);
  w.rbox = close_hierarchy(transitive, inclusions, mentioned);

  const auto& nodes = j.at("nodes");
  w.tree.nodes.resize(nodes.size());
  for (const auto& node : nodes) {
    NodeId id = node.at("id").get<NodeId>();
    TreeNode& n = w.tree.nodes.at(id);
    int parent = node.at("parent").get<int>();
    n.parent = parent < 0 ? kNoNode : static_cast<NodeId>(parent);
    for (const auto& e : node.at("edge"))
      flat::insert(n.edge_roles, detail::parse_role_string(store, e.get<std::string>()).raw());
    for (const auto& l : node.at("label"))
      flat::insert(n.label, parse_concept(store, l.get<std::string>()));
    if (n.parent != kNoNode) {
      w.tree.nodes.at(n.parent).children.push_back(id);
      n.depth = 0;  // fixed up below
    }
  }
  for (NodeId x = 0; x < w.tree.nodes.size(); ++x) {
    TreeNode& n = w.tree.nodes[x];
    std::uint32_t depth = 0;
    for (NodeId v = n.parent; v != kNoNode; v = w.tree.nodes.at(v).parent) ++depth;
    n.depth = depth;
    std::sort(n.children.begin(), n.children.end());
  }
  if (j.contains("distinct"))
    for (const auto& pair : j.at("distinct"))
      w.tree.add_distinct(pair.at(0).get<NodeId>(), pair.at(1).get<NodeId>());
  return w;
}

inline void save_witness(const std::string& path, const ConceptStore& store, ConceptId goal,
                         const RoleBox& rbox, const CompletionTree& tree) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << witness_to_json(store, goal, rbox, tree).dump(2) << "\n";
}

inline StoredWitness load_witness(const std::string& path, ConceptStore& store) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return witness_from_json(store, j);
}

}  // namespace dlsat
