// ============================================================================
// dlsat/domino.hpp — grid axioms for domino (tiling) systems
// ============================================================================
//
// Generates a knowledge base whose satisfiability would answer the tiling
// problem for a domino system (D, H, V): four grid-point concepts A/B/C/D
// alternate along horizontal roles X1/X2 and vertical roles Y1/Y2, each grid
// axiom caps the transitive super-role S_ij (above X_i and Y_j) at three
// successors to force the X∘Y / Y∘X coincidence, tiles cover every grid
// point, and value restrictions propagate the H/V compatibility relations.
//
// The output parses fine — and the engine then refuses it with
// NonSimpleRoleInNumberRestriction, because the S_ij in the (at-most 3 S_ij)
// restrictions are transitive.  That refusal is the point: deciding the
// unrestricted fragment would decide tiling.
//
// ============================================================================

#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dlsat/syntax.hpp"

namespace dlsat {

struct DominoSystem {
  std::vector<std::string> tiles;
  std::vector<std::pair<std::size_t, std::size_t>> horizontal;  // indices into tiles
  std::vector<std::pair<std::size_t, std::size_t>> vertical;
};

inline std::string domino_gen(const DominoSystem& sys) {
  if (sys.tiles.empty()) throw std::invalid_argument("domino system needs at least one tile type");
  static const char* kGridNames[] = {"A",  "B",  "C",  "D",  "X1",  "X2",
                                     "Y1", "Y2", "S11", "S12", "S21", "S22"};
  std::set<std::string> seen;
  for (const std::string& t : sys.tiles) {
    if (!seen.insert(t).second) throw std::invalid_argument("duplicate tile name: " + t);
    for (const char* g : kGridNames)
      if (t == g) throw std::invalid_argument("tile name collides with grid vocabulary: " + t);
  }
  for (const auto& [a, b] : sys.horizontal)
    if (a >= sys.tiles.size() || b >= sys.tiles.size())
      throw std::invalid_argument("horizontal pair out of range");
  for (const auto& [a, b] : sys.vertical)
    if (a >= sys.tiles.size() || b >= sys.tiles.size())
      throw std::invalid_argument("vertical pair out of range");

  std::ostringstream out;
  out << "; grid axioms for a domino system with " << sys.tiles.size() << " tile type(s)\n";
  for (const char* s : {"S11", "S12", "S21", "S22"}) out << "(transitive " << s << ")\n";
  out << "(implies-role X1 S11)\n(implies-role Y1 S11)\n";
  out << "(implies-role X1 S12)\n(implies-role Y2 S12)\n";
  out << "(implies-role X2 S21)\n(implies-role Y1 S21)\n";
  out << "(implies-role X2 S22)\n(implies-role Y2 S22)\n";

  auto grid_axiom = [&](const char* name, const char* o1, const char* o2, const char* o3,
                        const char* xr, const char* xt, const char* yr, const char* yt,
                        const char* s) {
    out << "(implies " << name << " (and (not " << o1 << ") (not " << o2 << ") (not " << o3
        << ") (some " << xr << " " << xt << ") (some " << yr << " " << yt << ") (at-most 3 " << s
        << ")))\n";
  };
  grid_axiom("A", "B", "C", "D", "X1", "B", "Y1", "C", "S11");
  grid_axiom("B", "A", "C", "D", "X2", "A", "Y1", "D", "S21");
  grid_axiom("C", "A", "B", "D", "X1", "D", "Y2", "A", "S12");
  grid_axiom("D", "A", "B", "C", "X2", "C", "Y2", "B", "S22");

  auto disjunction = [&](const std::vector<std::string>& names) {
    if (names.empty()) return std::string("bottom");
    if (names.size() == 1) return names[0];
    std::string d = "(or";
    for (const std::string& n : names) d += " " + n;
    return d + ")";
  };

  // coverage: every grid point carries some tile
  out << "(implies (or A B C D) " << disjunction(sys.tiles) << ")\n";

  // local compatibility, reconstructed as value restrictions over the X/Y
  // roles: horizontal neighbours must be H-compatible, vertical V-compatible
  for (std::size_t i = 0; i < sys.tiles.size(); ++i) {
    std::vector<std::string> h_ok, v_ok;
    for (const auto& [a, b] : sys.horizontal)
      if (a == i) h_ok.push_back(sys.tiles[b]);
    for (const auto& [a, b] : sys.vertical)
      if (a == i) v_ok.push_back(sys.tiles[b]);
    out << "(implies " << sys.tiles[i] << " (and (all X1 " << disjunction(h_ok) << ") (all X2 "
        << disjunction(h_ok) << ") (all Y1 " << disjunction(v_ok) << ") (all Y2 "
        << disjunction(v_ok) << ")))\n";
  }
  // a point carries exactly one tile type
  for (std::size_t i = 0; i < sys.tiles.size(); ++i)
    for (std::size_t j = i + 1; j < sys.tiles.size(); ++j)
      out << "(implies " << sys.tiles[i] << " (not " << sys.tiles[j] << "))\n";
  return out.str();
}

}  // namespace dlsat
