#include <catch2/catch_amalgamated.hpp>

#include "dlsat/interpretation.hpp"
#include "dlsat/model_search.hpp"
#include "dlsat/tableau.hpp"
#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace dlsat;

namespace {

Interpretation two_elem(ConceptStore& s) {
  // domain {0,1}, R = {(0,1)}, A = {1}
  Interpretation m;
  m.size = 2;
  m.atoms[s.atom_symbol("A")] = {false, true};
  m.roles[s.role_symbol("R")] = {{0, 1}};
  return m;
}

}  // namespace

TEST_CASE("eval_concept follows the semantics table") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A");

  SECTION("top is the whole domain") {
    Interpretation m = two_elem(s);
    CHECK(eval_concept(s, m, s.top()) == std::vector<bool>{true, true});
    CHECK(eval_concept(s, m, s.bottom()) == std::vector<bool>{false, false});
  }
  SECTION("existential restriction") {
    Interpretation m = two_elem(s);
    CHECK(eval_concept(s, m, s.make_exists(r, a)) == std::vector<bool>{true, false});
    // inverse role reads the converse relation
    CHECK(eval_concept(s, m, s.make_exists(inv(r), s.top())) == std::vector<bool>{false, true});
  }
  SECTION("qualifying number restrictions count witnesses") {
    Interpretation m;
    m.size = 3;
    m.atoms[s.atom_symbol("A")] = {false, true, true};
    m.roles[s.role_symbol("R")] = {{0, 1}, {0, 2}};
    CHECK(eval_concept(s, m, s.make_at_least(2, r, a)) ==
          std::vector<bool>{true, false, false});
    CHECK(eval_concept(s, m, s.make_at_most(1, r, a)) == std::vector<bool>{false, true, true});
  }
  SECTION("missing atoms and roles default to empty") {
    Interpretation m = two_elem(s);
    CHECK(eval_concept(s, m, s.make_atom("Unknown")) == std::vector<bool>{false, false});
    CHECK(eval_concept(s, m, s.make_exists(s.make_role("Q"), s.top())) ==
          std::vector<bool>{false, false});
  }
}

TEST_CASE("transitive closure repair is idempotent and minimal") {
  std::set<DomainPair> base{{0, 1}, {1, 2}};
  auto closed = transitive_closure(base);
  CHECK(closed == std::set<DomainPair>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(transitive_closure(closed) == closed);  // closure of a closed relation is itself
}

TEST_CASE("find_model finds small models and respects the role box") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A"), b = s.make_atom("B");

  SECTION("an atom has a one-element model") {
    RoleBox rb;
    auto m = find_model(s, a, rb);
    REQUIRE(m);
    CHECK(m->size == 1);
    CHECK(eval_concept(s, *m, a)[0]);
  }
  SECTION("exists with forall overlap") {
    RoleBox rb;
    ModelSearchOptions opts;
    opts.max_domain = 2;
    ConceptId c = s.make_and(s.make_exists(r, a), s.make_forall(r, b));
    auto m = find_model(s, c, rb, nullptr, opts);
    REQUIRE(m);
    CHECK(eval_concept(s, *m, c)[0]);
  }
  SECTION("transitive roles come back closed") {
    RoleBox rb = close_hierarchy({r.name}, {});
    ConceptId c = s.make_and(s.make_not(a),
                             s.make_exists(r, s.make_and(s.make_not(a), s.make_exists(r, a))));
    auto m = find_model(s, nnf(s, c), rb, nullptr, ModelSearchOptions{3, 20'000'000});
    REQUIRE(m);
    CHECK(respects_transitivity(*m, rb));
    CHECK(eval_concept(s, *m, nnf(s, c))[0]);
  }
  SECTION("hierarchy satisfaction is enforced") {
    Role f = s.make_role("F");
    RoleBox rb = close_hierarchy({}, {{f, r}});
    // ∃F.A with ∀R.¬A is unsatisfiable once F ⊑ R
    ConceptId c = s.make_and(s.make_exists(f, a), s.make_forall(r, s.make_not(a)));
    CHECK_FALSE(find_model(s, nnf(s, c), rb, nullptr, ModelSearchOptions{3, 20'000'000}));
  }
  SECTION("the infinite-model concept has no bounded model") {
    auto fix = fixtures::infinite_model(s);
    for (std::uint32_t cap = 1; cap <= 4; ++cap)
      CHECK_FALSE(
          find_model(s, fix.goal, fix.rbox, nullptr, ModelSearchOptions{cap, 50'000'000}));
  }
  SECTION("terminology-aware search enforces the GCIs") {
    Terminology t;
    t.gcis.emplace_back(a, b);
    ConceptId query = s.make_and(a, s.make_not(b));
    CHECK_FALSE(find_model(s, query, t.rbox, &t, ModelSearchOptions{3, 20'000'000}));
    auto m = find_model(s, a, t.rbox, &t);
    REQUIRE(m);
    CHECK(eval_concept(s, *m, b)[0]);  // the GCI forces B on the witness
  }
  SECTION("budget exhaustion reports BudgetExceeded") {
    RoleBox rb;
    ConceptId hard = s.make_and(s.make_exists(r, a), s.make_exists(r, s.make_not(a)));
    CHECK_THROWS_AS(find_model(s, hard, rb, nullptr, ModelSearchOptions{4, 2}), BudgetExceeded);
  }
}

TEST_CASE("validate_tableau checks the defining properties") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A");
  ConceptId d = nnf(s, s.make_and(s.make_exists(r, a), s.make_forall(r, a)));
  RoleBox rb = close_hierarchy({}, {}, {r});

  auto m = find_model(s, d, rb);
  REQUIRE(m);
  TableauStructure t = model_to_tableau(s, *m, d, rb);

  SECTION("a model-induced structure passes") {
    auto rep = validate_tableau(s, t, d, rb);
    for (const auto& v : rep.violations) INFO(v);
    CHECK(rep.ok);
  }
  SECTION("dropping Inv-symmetry fails property 7") {
    REQUIRE(!t.edges[r.raw()].empty());
    DomainPair e = *t.edges[r.raw()].begin();
    t.edges[inv(r).raw()].erase({e.second, e.first});
    auto rep = validate_tableau(s, t, d, rb);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.find("property 7") != std::string::npos) found = true;
    CHECK(found);
  }
  SECTION("a label with C and ¬C fails property 1") {
    flat::insert(t.labels[0], s.make_not(a));
    flat::insert(t.labels[0], a);
    auto rep = validate_tableau(s, t, d, rb);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.find("property 1") != std::string::npos) found = true;
    CHECK(found);
  }
}

TEST_CASE("model-induced tableaux pass validation on random inputs", "[property]") {
  ConceptStore s;
  gen::Rng rng(314159);
  gen::Config cfg;
  cfg.inverse = true;
  int validated = 0;
  for (int i = 0; i < 40; ++i) {
    RoleBox rb = gen::random_rolebox(s, rng, cfg, true, true);
    ConceptId d = nnf(s, gen::random_concept(s, rng, cfg, 3));
    auto m = find_model(s, d, rb, nullptr, ModelSearchOptions{3, 20'000'000});
    if (!m) continue;
    ++validated;
    TableauStructure t = model_to_tableau(s, *m, d, rb);
    auto rep = validate_tableau(s, t, d, rb);
    INFO(s.to_sexpr(d));
    for (const auto& v : rep.violations) INFO(v);
    CHECK(rep.ok);
  }
  CHECK(validated > 10);
}
