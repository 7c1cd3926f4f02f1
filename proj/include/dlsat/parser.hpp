// ============================================================================
// dlsat/parser.hpp — the s-expression knowledge-base format
// ============================================================================
//
// Statements:
//   (transitive R)                      R is a transitive role
//   (implies-role ROLE ROLE)            role inclusion, either side may be (inv R)
//   (define NAME CONCEPT)               named concept (a macro: occurrences of
//                                       NAME in later concepts expand to it)
//   (implies CONCEPT CONCEPT)           general concept inclusion
//   (query sat CONCEPT)
//   (query subsumes CONCEPT CONCEPT)
//
// Concepts:
//   NAME | top | bottom | (not C) | (and C C ...) | (or C C ...)
//   (some ROLE C) | (all ROLE C)
//   (at-least n ROLE [C]) | (at-most n ROLE [C])     filler defaults to top
//
// n-ary and/or are right-associated into the binary AST.  Identifiers are
// case-sensitive; names beginning with '_' are reserved (the internalisation
// role "_U" lives there) and rejected.  Errors carry line/column positions.
//
// ============================================================================

#pragma once

#include <cctype>
#include <optional>
#include <string>

#include "dlsat/kb.hpp"
#include "dlsat/normal.hpp"
#include "dlsat/syntax.hpp"

namespace dlsat {

class ParseError : public std::runtime_error {
public:
  ParseError(std::uint32_t line, std::uint32_t col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                           msg),
        line_(line),
        col_(col) {}
  std::uint32_t line() const { return line_; }
  std::uint32_t col() const { return col_; }

private:
  std::uint32_t line_, col_;
};

struct KbQuery {
  enum class Kind { Sat, Subsumes };
  Kind kind = Kind::Sat;
  ConceptId a = kNoConcept, b = kNoConcept;
  friend bool operator==(const KbQuery& x, const KbQuery& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }
};

// Source position of a number restriction, kept so the non-simple-role guard
// can point back into the input.
struct NrSite {
  Role role;
  std::uint32_t line = 0, col = 0;
};

struct KbDocument {
  std::vector<Symbol> transitive;                       // declaration order, deduped
  std::vector<std::pair<Role, Role>> inclusions;        // declaration order
  std::vector<std::pair<std::string, ConceptId>> defines;
  std::vector<std::pair<ConceptId, ConceptId>> gcis;
  std::vector<KbQuery> queries;
  std::vector<NrSite> nr_sites;

  std::optional<ConceptId> lookup(const std::string& name) const {
    for (const auto& [n, c] : defines)
      if (n == name) return c;
    return std::nullopt;
  }

  Terminology to_terminology(const ConceptStore& store) const {
    std::vector<Role> mentioned;
    auto collect = [&](ConceptId c) { collect_roles(store, c, mentioned); };
    for (const auto& [c, d] : gcis) {
      collect(c);
      collect(d);
    }
    for (const auto& [name, c] : defines) collect(c);
    for (const KbQuery& q : queries) {
      collect(q.a);
      if (q.b != kNoConcept) collect(q.b);
    }
    Terminology t;
    t.gcis = gcis;
    t.rbox = close_hierarchy(transitive, inclusions, mentioned);
    return t;
  }
};

namespace detail {

struct Token {
  enum class Kind { LParen, RParen, Symbol, Number, End };
  Kind kind = Kind::End;
  std::string text;
  std::uint32_t num = 0;
  std::uint32_t line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (c == '(') {
      tok_.kind = Token::Kind::LParen;
      bump(1);
    } else if (c == ')') {
      tok_.kind = Token::Kind::RParen;
      bump(1);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump(1);
      tok_.kind = Token::Kind::Number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      tok_.num = static_cast<std::uint32_t>(std::stoul(tok_.text));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      auto ident = [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
      };
      while (pos_ < src_.size() && ident(src_[pos_])) bump(1);
      tok_.kind = Token::Kind::Symbol;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else {
      throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }
  }

  void bump(std::size_t n) {
    pos_ += n;
    col_ += static_cast<std::uint32_t>(n);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1, col_ = 1;
  Token tok_;
};

class KbParser {
public:
  KbParser(ConceptStore& store, std::string_view src) : store_(store), lex_(src) {}

  KbDocument parse_document() {
    KbDocument doc;
    while (lex_.peek().kind != Token::Kind::End) parse_statement(doc);
    doc_ = nullptr;
    return doc;
  }

  ConceptId parse_single_concept(const KbDocument* defs) {
    doc_holder_ = defs ? *defs : KbDocument{};
    doc_ = &doc_holder_;
    ConceptId c = parse_concept();
    expect_end();
    return c;
  }

private:
  void expect_end() {
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError(lex_.peek().line, lex_.peek().col, "expected end of input");
  }

  Token expect(Token::Kind k, const char* what) {
    Token t = lex_.take();
    if (t.kind != k)
      throw ParseError(t.line, t.col, std::string("expected ") + what +
                                          (t.kind == Token::Kind::End ? " at end of input" : ""));
    return t;
  }

  std::string expect_name() {
    Token t = expect(Token::Kind::Symbol, "an identifier");
    if (!t.text.empty() && t.text[0] == '_')
      throw ParseError(t.line, t.col, "'" + t.text + "' is reserved (leading underscore)");
    return t.text;
  }

  static bool is_keyword(const std::string& s) {
    static const char* kw[] = {"top",      "bottom",  "not",     "and",     "or",
                               "some",     "all",     "at-least", "at-most", "inv",
                               "transitive", "implies-role", "define", "implies", "query",
                               "sat",      "subsumes"};
    for (const char* k : kw)
      if (s == k) return true;
    return false;
  }

  void parse_statement(KbDocument& doc) {
    doc_ = &doc;
    expect(Token::Kind::LParen, "'('");
    Token head = expect(Token::Kind::Symbol, "a statement keyword");
    if (head.text == "transitive") {
      std::string name = expect_name();
      Symbol s = store_.role_symbol(name);
      if (std::find(doc.transitive.begin(), doc.transitive.end(), s) == doc.transitive.end())
        doc.transitive.push_back(s);
    } else if (head.text == "implies-role") {
      Role r = parse_role();
      Role s = parse_role();
      doc.inclusions.emplace_back(r, s);
    } else if (head.text == "define") {
      Token name_tok = lex_.peek();
      std::string name = expect_name();
      if (is_keyword(name))
        throw ParseError(name_tok.line, name_tok.col, "'" + name + "' is a keyword");
      if (doc.lookup(name))
        throw ParseError(name_tok.line, name_tok.col, "duplicate definition of '" + name + "'");
      ConceptId c = parse_concept();
      doc.defines.emplace_back(name, c);
    } else if (head.text == "implies") {
      ConceptId c = parse_concept();
      ConceptId d = parse_concept();
      doc.gcis.emplace_back(c, d);
    } else if (head.text == "query") {
      Token kind = expect(Token::Kind::Symbol, "'sat' or 'subsumes'");
      if (kind.text == "sat") {
        KbQuery q{KbQuery::Kind::Sat, parse_concept(), kNoConcept};
        doc.queries.push_back(q);
      } else if (kind.text == "subsumes") {
        ConceptId a = parse_concept();
        ConceptId b = parse_concept();
        doc.queries.push_back({KbQuery::Kind::Subsumes, a, b});
      } else {
        throw ParseError(kind.line, kind.col, "unknown query kind '" + kind.text + "'");
      }
    } else {
      throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'");
    }
    expect(Token::Kind::RParen, "')'");
  }

  Role parse_role() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Symbol) {
      return store_.make_role(expect_name());
    }
    expect(Token::Kind::LParen, "a role");
    Token head = expect(Token::Kind::Symbol, "'inv'");
    if (head.text != "inv") throw ParseError(head.line, head.col, "expected 'inv'");
    Role r = store_.make_role(expect_name(), true);
    expect(Token::Kind::RParen, "')'");
    return r;
  }

  ConceptId parse_concept() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Symbol) {
      lex_.take();
      if (t.text == "top") return store_.top();
      if (t.text == "bottom") return store_.bottom();
      if (!t.text.empty() && t.text[0] == '_')
        throw ParseError(t.line, t.col, "'" + t.text + "' is reserved (leading underscore)");
      if (is_keyword(t.text)) throw ParseError(t.line, t.col, "'" + t.text + "' is a keyword");
      if (doc_)
        if (auto def = doc_->lookup(t.text)) return *def;
      return store_.make_atom(t.text);
    }
    expect(Token::Kind::LParen, "a concept");
    Token head = expect(Token::Kind::Symbol, "a concept constructor");
    ConceptId out = kNoConcept;
    if (head.text == "not") {
      out = store_.make_not(parse_concept());
    } else if (head.text == "and" || head.text == "or") {
      std::vector<ConceptId> parts;
      parts.push_back(parse_concept());
      parts.push_back(parse_concept());
      while (lex_.peek().kind != Token::Kind::RParen) parts.push_back(parse_concept());
      out = parts.back();
      for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
        out = head.text == "and" ? store_.make_and(*it, out) : store_.make_or(*it, out);
    } else if (head.text == "some" || head.text == "all") {
      Role r = parse_role();
      ConceptId c = parse_concept();
      out = head.text == "some" ? store_.make_exists(r, c) : store_.make_forall(r, c);
    } else if (head.text == "at-least" || head.text == "at-most") {
      Token num = expect(Token::Kind::Number, "a non-negative integer");
      Role r = parse_role();
      ConceptId filler =
          lex_.peek().kind == Token::Kind::RParen ? store_.top() : parse_concept();
      out = head.text == "at-least" ? store_.make_at_least(num.num, r, filler)
                                    : store_.make_at_most(num.num, r, filler);
      if (doc_) doc_->nr_sites.push_back({r, head.line, head.col});
    } else {
      throw ParseError(head.line, head.col, "unknown concept constructor '" + head.text + "'");
    }
    expect(Token::Kind::RParen, "')'");
    return out;
  }

  ConceptStore& store_;
  Lexer lex_;
  KbDocument* doc_ = nullptr;
  KbDocument doc_holder_;
};

}  // namespace detail

inline KbDocument parse_kb(ConceptStore& store, std::string_view text) {
  return detail::KbParser(store, text).parse_document();
}

// A single concept expression; `defs` resolves defined names when given.
inline ConceptId parse_concept(ConceptStore& store, std::string_view text,
                               const KbDocument* defs = nullptr) {
  return detail::KbParser(store, text).parse_single_concept(defs);
}

}  // namespace dlsat
