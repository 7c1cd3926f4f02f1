// ============================================================================
// dlsat/syntax.hpp — concept and role representation
// ============================================================================
//
// Concepts are interned in a ConceptStore: two structurally identical
// concepts always receive the same ConceptId, so label sets and closure
// computations compare and hash concepts as plain integers.  Ids are
// assigned in creation order, which keeps every iteration over sorted
// id vectors deterministic.
//
// Node kinds:
//   Atom            named concept, `sym`
//   Top / Bottom    constants (Bottom is first-class: it is the NNF of
//                   ¬Top and of ¬(>= 0 R C))
//   Not             negation, child `lhs`
//   And / Or        binary connectives, `lhs`, `rhs`
//   Exists / Forall role quantifier, `role`, filler `lhs`
//   AtLeast/AtMost  qualifying number restriction, `num`, `role`, `lhs`
//
// Roles are value types: a role-name symbol plus an inversion flag.
// inv() flips the flag, so R⁻⁻ is never representable.
//
// ============================================================================

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dlsat {

using ConceptId = std::uint32_t;
using Symbol = std::uint32_t;
inline constexpr ConceptId kNoConcept = 0xffffffffu;

// ── Role ────────────────────────────────────────────────────────────────────

struct Role {
  Symbol name = 0;
  bool inverted = false;

  // Dense encoding used for role sets and hash keys.
  std::uint32_t raw() const { return (name << 1) | (inverted ? 1u : 0u); }
  static Role from_raw(std::uint32_t r) { return Role{r >> 1, (r & 1u) != 0}; }

  friend bool operator==(const Role& a, const Role& b) {
    return a.name == b.name && a.inverted == b.inverted;
  }
  friend bool operator!=(const Role& a, const Role& b) { return !(a == b); }
  friend bool operator<(const Role& a, const Role& b) { return a.raw() < b.raw(); }
};

// Inv(R): R -> R⁻, R⁻ -> R.  Involution by construction.
inline Role inv(Role r) { return Role{r.name, !r.inverted}; }

// ── Concept nodes ───────────────────────────────────────────────────────────

enum class ConceptKind : std::uint8_t {
  Atom,
  Top,
  Bottom,
  Not,
  And,
  Or,
  Exists,
  Forall,
  AtLeast,
  AtMost,
};

struct ConceptNode {
  ConceptKind kind;
  Symbol sym = 0;                 // Atom
  std::uint32_t num = 0;          // AtLeast / AtMost
  Role role{};                    // Exists / Forall / AtLeast / AtMost
  ConceptId lhs = kNoConcept;     // child / filler
  ConceptId rhs = kNoConcept;     // And / Or only
};

inline bool is_number_restriction(ConceptKind k) {
  return k == ConceptKind::AtLeast || k == ConceptKind::AtMost;
}
inline bool has_role(ConceptKind k) {
  return k == ConceptKind::Exists || k == ConceptKind::Forall || is_number_restriction(k);
}

// ── ConceptStore ────────────────────────────────────────────────────────────
// Owns all concept nodes plus the atom/role name tables.  Ids handed out are
// stable (nodes live in a deque).  Construction is not thread-safe; once a
// store stops growing, any number of threads may read it.

class ConceptStore {
public:
  ConceptStore() {
    top_ = insert(ConceptNode{ConceptKind::Top});
    bottom_ = insert(ConceptNode{ConceptKind::Bottom});
  }

  ConceptStore(const ConceptStore&) = delete;
  ConceptStore& operator=(const ConceptStore&) = delete;

  // name tables -------------------------------------------------------------

  Symbol atom_symbol(std::string_view name) { return intern_name(atom_names_, atom_index_, name); }
  Symbol role_symbol(std::string_view name) { return intern_name(role_names_, role_index_, name); }
  const std::string& atom_name(Symbol s) const { return atom_names_.at(s); }
  const std::string& role_name(Symbol s) const { return role_names_.at(s); }
  Role make_role(std::string_view name, bool inverted = false) {
    return Role{role_symbol(name), inverted};
  }

  // constructors ------------------------------------------------------------

  ConceptId top() const { return top_; }
  ConceptId bottom() const { return bottom_; }
  ConceptId make_atom(std::string_view name) {
    ConceptNode n{ConceptKind::Atom};
    n.sym = atom_symbol(name);
    return insert(n);
  }
  ConceptId make_atom(Symbol sym) {
    ConceptNode n{ConceptKind::Atom};
    n.sym = sym;
    return insert(n);
  }
  ConceptId make_not(ConceptId c) {
    ConceptNode n{ConceptKind::Not};
    n.lhs = c;
    return insert(n);
  }
  ConceptId make_and(ConceptId a, ConceptId b) {
    ConceptNode n{ConceptKind::And};
    n.lhs = a;
    n.rhs = b;
    return insert(n);
  }
  ConceptId make_or(ConceptId a, ConceptId b) {
    ConceptNode n{ConceptKind::Or};
    n.lhs = a;
    n.rhs = b;
    return insert(n);
  }
  ConceptId make_exists(Role r, ConceptId c) {
    ConceptNode n{ConceptKind::Exists};
    n.role = r;
    n.lhs = c;
    return insert(n);
  }
  ConceptId make_forall(Role r, ConceptId c) {
    ConceptNode n{ConceptKind::Forall};
    n.role = r;
    n.lhs = c;
    return insert(n);
  }
  ConceptId make_at_least(std::uint32_t num, Role r, ConceptId c) {
    ConceptNode n{ConceptKind::AtLeast};
    n.num = num;
    n.role = r;
    n.lhs = c;
    return insert(n);
  }
  ConceptId make_at_most(std::uint32_t num, Role r, ConceptId c) {
    ConceptNode n{ConceptKind::AtMost};
    n.num = num;
    n.role = r;
    n.lhs = c;
    return insert(n);
  }

  const ConceptNode& node(ConceptId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  // printing ----------------------------------------------------------------

  std::string role_sexpr(Role r) const {
    if (r.inverted) return "(inv " + role_name(r.name) + ")";
    return role_name(r.name);
  }

  // S-expression form; number restrictions with filler Top print in the
  // unqualified sugar form "(at-most n R)".
  std::string to_sexpr(ConceptId id) const {
    const ConceptNode& n = node(id);
    switch (n.kind) {
      case ConceptKind::Atom: return atom_name(n.sym);
      case ConceptKind::Top: return "top";
      case ConceptKind::Bottom: return "bottom";
      case ConceptKind::Not: return "(not " + to_sexpr(n.lhs) + ")";
      case ConceptKind::And: return "(and " + to_sexpr(n.lhs) + " " + to_sexpr(n.rhs) + ")";
      case ConceptKind::Or: return "(or " + to_sexpr(n.lhs) + " " + to_sexpr(n.rhs) + ")";
      case ConceptKind::Exists:
        return "(some " + role_sexpr(n.role) + " " + to_sexpr(n.lhs) + ")";
      case ConceptKind::Forall:
        return "(all " + role_sexpr(n.role) + " " + to_sexpr(n.lhs) + ")";
      case ConceptKind::AtLeast:
      case ConceptKind::AtMost: {
        std::string head = n.kind == ConceptKind::AtLeast ? "at-least" : "at-most";
        std::string out = "(" + head + " " + std::to_string(n.num) + " " + role_sexpr(n.role);
        if (node(n.lhs).kind != ConceptKind::Top) out += " " + to_sexpr(n.lhs);
        return out + ")";
      }
    }
    return "?";
  }

private:
  struct Key {
    std::uint64_t a, b;
    friend bool operator==(const Key& x, const Key& y) { return x.a == y.a && x.b == y.b; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull;
      h ^= k.b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  static Key key_of(const ConceptNode& n) {
    Key k;
    k.a = (static_cast<std::uint64_t>(n.kind) << 56) | (static_cast<std::uint64_t>(n.sym) << 24) |
          static_cast<std::uint64_t>(n.role.raw());
    k.b = (static_cast<std::uint64_t>(n.lhs) << 32) | static_cast<std::uint64_t>(n.rhs);
    k.b ^= static_cast<std::uint64_t>(n.num) << 16;
    return k;
  }

  ConceptId insert(const ConceptNode& n) {
    Key k = key_of(n);
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    ConceptId id = static_cast<ConceptId>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(k, id);
    return id;
  }

  static Symbol intern_name(std::vector<std::string>& names,
                            std::unordered_map<std::string, Symbol>& idx, std::string_view name) {
    auto it = idx.find(std::string(name));
    if (it != idx.end()) return it->second;
    Symbol s = static_cast<Symbol>(names.size());
    names.emplace_back(name);
    idx.emplace(std::string(name), s);
    return s;
  }

  std::deque<ConceptNode> nodes_;
  std::unordered_map<Key, ConceptId, KeyHash> index_;
  std::vector<std::string> atom_names_, role_names_;
  std::unordered_map<std::string, Symbol> atom_index_, role_index_;
  ConceptId top_, bottom_;
};

// ── sorted-vector set helpers ───────────────────────────────────────────────
// Labels, closures and edge role sets are sorted unique vectors: cheap to
// copy, deterministic to iterate, O(log n) membership.

namespace flat {

template <typename T>
bool contains(const std::vector<T>& v, T x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Returns true if x was inserted (was not present).
template <typename T>
bool insert(std::vector<T>& v, T x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) return false;
  v.insert(it, x);
  return true;
}

template <typename T>
bool erase(std::vector<T>& v, T x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return false;
  v.erase(it);
  return true;
}

}  // namespace flat

}  // namespace dlsat
