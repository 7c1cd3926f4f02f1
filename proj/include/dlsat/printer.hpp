// ============================================================================
// dlsat/printer.hpp — canonical text form of knowledge-base documents
// ============================================================================
// print(parse(text)) reparses to a structurally identical document.  Defined
// names were expanded at parse time, so definitions print their expansions.

#pragma once

#include <sstream>

#include "dlsat/parser.hpp"

namespace dlsat {

inline std::string print_document(const ConceptStore& store, const KbDocument& doc) {
  std::ostringstream out;
  for (Symbol s : doc.transitive) out << "(transitive " << store.role_name(s) << ")\n";
  for (const auto& [r, s] : doc.inclusions)
    out << "(implies-role " << store.role_sexpr(r) << " " << store.role_sexpr(s) << ")\n";
  for (const auto& [name, c] : doc.defines)
    out << "(define " << name << " " << store.to_sexpr(c) << ")\n";
  for (const auto& [c, d] : doc.gcis)
    out << "(implies " << store.to_sexpr(c) << " " << store.to_sexpr(d) << ")\n";
  for (const KbQuery& q : doc.queries) {
    if (q.kind == KbQuery::Kind::Sat)
      out << "(query sat " << store.to_sexpr(q.a) << ")\n";
    else
      out << "(query subsumes " << store.to_sexpr(q.a) << " " << store.to_sexpr(q.b) << ")\n";
  }
  return out.str();
}

}  // namespace dlsat
