// ============================================================================
// dlsat/trace.hpp — engine trace events
// ============================================================================
// Optional event stream consumed by the DOT emitter and by tests.  Events
// carry (step#, kind, node ids, concept involved); SI runs additionally
// emit Reset events.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "dlsat/syntax.hpp"

namespace dlsat {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

enum class RuleKind : std::uint8_t {
  Conj,         // ⊓
  Disj,         // ⊔
  Exists,       // ∃
  Forall,       // ∀
  ForallTrans,  // ∀₊
  Choose,
  AtLeast,      // ≥
  AtMost,       // ≤ (merge)
};
inline constexpr int kRuleKindCount = 8;

inline const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::Conj: return "and";
    case RuleKind::Disj: return "or";
    case RuleKind::Exists: return "some";
    case RuleKind::Forall: return "all";
    case RuleKind::ForallTrans: return "all+";
    case RuleKind::Choose: return "choose";
    case RuleKind::AtLeast: return "at-least";
    case RuleKind::AtMost: return "at-most";
  }
  return "?";
}

struct TraceEvent {
  enum class Kind : std::uint8_t {
    RuleFired,
    NodeCreated,
    BlockEstablished,
    BlockBroken,
    Backtrack,
    Reset,  // SI trace mode: all successors of `node` deleted
  };
  std::uint64_t step = 0;
  Kind kind = Kind::RuleFired;
  RuleKind rule = RuleKind::Conj;  // RuleFired / NodeCreated
  NodeId node = kNoNode;           // primary node (rule's x, created node, blocked node)
  NodeId other = kNoNode;          // rule target / parent / blocker
  ConceptId concept_id = kNoConcept;
};

using TraceHook = std::function<void(const TraceEvent&)>;

}  // namespace dlsat
