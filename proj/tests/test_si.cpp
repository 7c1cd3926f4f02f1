#include <catch2/catch_amalgamated.hpp>

#include "dlsat/model_search.hpp"
#include "dlsat/shiq.hpp"
#include "dlsat/si.hpp"
#include "support/gen.hpp"

using namespace dlsat;

namespace {

NodeId si_add_child(SiTree& t, NodeId parent, Role role, std::vector<ConceptId> l,
                    std::vector<ConceptId> b) {
  SiNode n;
  n.parent = parent;
  std::sort(l.begin(), l.end());
  std::sort(b.begin(), b.end());
  n.l_label = std::move(l);
  n.b_label = std::move(b);
  n.in_role_raw = role.raw();
  n.has_in_role = true;
  n.depth = t.nodes[parent].depth + 1;
  NodeId id = static_cast<NodeId>(t.nodes.size());
  t.nodes.push_back(std::move(n));
  t.nodes[parent].children.push_back(id);
  return id;
}

}  // namespace

TEST_CASE("similarity blocking: B-subset plus equal inverse restrictions") {
  ConceptStore s;
  Role r = s.make_role("S");
  ConceptId a = s.make_atom("A"), b = s.make_atom("B");

  SECTION("subset with empty restrictions blocks") {
    SiTree t;
    SiNode root;
    root.l_label = {a, b};
    std::sort(root.l_label.begin(), root.l_label.end());
    root.b_label = root.l_label;
    t.nodes.push_back(root);
    NodeId x = si_add_child(t, 0, r, {a}, {a});
    CHECK(si_is_blocked(s, t, x));
  }
  SECTION("a non-empty inverse restriction on x only prevents the block") {
    SiTree t;
    SiNode root;
    root.l_label = {a, b};
    std::sort(root.l_label.begin(), root.l_label.end());
    root.b_label = root.l_label;
    t.nodes.push_back(root);
    ConceptId back = s.make_forall(inv(r), s.make_atom("C"));
    NodeId x = si_add_child(t, 0, r, {a, back}, {a});
    CHECK_FALSE(si_is_blocked(s, t, x));  // L(x)/Inv(S) = {∀S⁻.C} ≠ ∅ = L(y)/Inv(S)
    // matching restriction on the ancestor restores the block
    flat::insert(t.nodes[0].l_label, back);
    CHECK(si_is_blocked(s, t, x));
  }
  SECTION("a blocked ancestor blocks everything below it") {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {a};
    t.nodes.push_back(root);
    NodeId x = si_add_child(t, 0, r, {a}, {a});
    REQUIRE(si_is_blocked(s, t, x));
    NodeId y = si_add_child(t, x, r, {a, b}, {a, b});  // labels would not block on their own
    flat::insert(t.nodes[y].l_label, s.make_atom("D"));
    CHECK(si_is_blocked(s, t, y));
  }
}

TEST_CASE("Figure-3 rules: successor case touches B, predecessor case only L") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A"), c = s.make_atom("C");

  SECTION("value restriction into a successor updates both labels") {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {s.make_forall(r, c)};
    t.nodes.push_back(root);
    NodeId y = si_add_child(t, 0, r, {a}, {a});
    SiStep step = si_apply_rules(s, t, {});
    REQUIRE(step.kind == SiStep::Kind::Applied);
    CHECK(flat::contains(t.nodes[y].l_label, c));
    CHECK(flat::contains(t.nodes[y].b_label, c));
  }
  SECTION("value restriction into a predecessor updates L only") {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {a};
    t.nodes.push_back(root);
    // y carries ∀R.C and sits below the root via R⁻, so the root is its
    // R-predecessor
    NodeId y = si_add_child(t, 0, inv(r), {s.make_forall(r, c)}, {s.make_forall(r, c)});
    SiStep step = si_apply_rules(s, t, {});
    REQUIRE(step.kind == SiStep::Kind::Applied);
    CHECK(flat::contains(t.nodes[0].l_label, c));
    CHECK_FALSE(flat::contains(t.nodes[0].b_label, c));
    (void)y;
  }
  SECTION("transitive value restrictions re-propagate themselves") {
    ConceptId all = s.make_forall(r, c);
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {all};
    t.nodes.push_back(root);
    NodeId y = si_add_child(t, 0, r, {a}, {a});
    while (si_apply_rules(s, t, {r.name}).kind == SiStep::Kind::Applied) {
    }
    CHECK(flat::contains(t.nodes[y].l_label, c));
    CHECK(flat::contains(t.nodes[y].b_label, all));
  }
  SECTION("the exists-rule waits for open work at ancestors") {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {s.make_or(a, c)};
    t.nodes.push_back(root);
    NodeId x = si_add_child(t, 0, r, {s.make_exists(r, a)}, {s.make_exists(r, a)});
    SiStep step = si_apply_rules(s, t, {});
    CHECK(step.kind == SiStep::Kind::Branch);  // the ⊔ at the root defers the ∃ at x
    CHECK(step.alternatives.size() == 2);
    (void)x;
  }
  SECTION("fixpoint") {
    SiTree t;
    SiNode root;
    root.l_label = root.b_label = {a};
    t.nodes.push_back(root);
    CHECK(si_apply_rules(s, t, {}).kind == SiStep::Kind::Fixpoint);
  }
}

TEST_CASE("si_decide_sat on the SI landmarks") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A");

  SECTION("existential against value restriction") {
    ConceptId d = nnf(s, s.make_and(s.make_exists(r, a), s.make_forall(r, s.make_not(a))));
    CHECK_FALSE(si_decide_sat(s, d, {}).satisfiable);
  }
  SECTION("transitive self-similar chain blocks") {
    ConceptId d = nnf(s, s.make_and(s.make_exists(r, a),
                                    s.make_forall(r, s.make_exists(r, a))));
    SiVerdict v = si_decide_sat(s, d, {r.name});
    REQUIRE(v.satisfiable);
    bool blocked = false;
    for (NodeId x = 0; x < v.witness.nodes.size(); ++x)
      if (si_is_blocked(s, v.witness, x)) blocked = true;
    CHECK(blocked);
    // the oracle concurs with a one-element self-loop model
    RoleBox rb = close_hierarchy({r.name}, {});
    CHECK(find_model(s, d, rb, nullptr, ModelSearchOptions{1, 20'000'000}).has_value());
  }
  SECTION("upward propagation forces a clash at the root") {
    ConceptId d = nnf(s, s.make_and(s.make_exists(inv(r), s.make_forall(r, s.make_not(a))), a));
    CHECK_FALSE(si_decide_sat(s, d, {}).satisfiable);
    RoleBox rb = close_hierarchy({}, {}, {r});
    CHECK_FALSE(find_model(s, d, rb, nullptr, ModelSearchOptions{3, 20'000'000}));
  }
  SECTION("number restrictions are rejected") {
    ConceptId d = s.make_at_least(2, r, a);
    CHECK_THROWS_AS(si_decide_sat(s, d, {}), std::invalid_argument);
    CHECK_THROWS_AS(si_decide_sat_trace(s, d, {}), std::invalid_argument);
  }
}

TEST_CASE("trace mode: reset-restart discipline") {
  ConceptStore s;
  Role r = s.make_role("R");
  ConceptId a = s.make_atom("A"), b = s.make_atom("B");

  SECTION("identical answers on the landmark inputs") {
    std::vector<std::pair<ConceptId, std::vector<Symbol>>> inputs;
    inputs.push_back(
        {nnf(s, s.make_and(s.make_exists(r, a), s.make_forall(r, s.make_not(a)))), {}});
    inputs.push_back({nnf(s, s.make_and(s.make_exists(r, a),
                                        s.make_forall(r, s.make_exists(r, a)))),
                      {r.name}});
    inputs.push_back(
        {nnf(s, s.make_and(s.make_exists(inv(r), s.make_forall(r, s.make_not(a))), a)), {}});
    for (const auto& [d, trans] : inputs)
      CHECK(si_decide_sat(s, d, trans).satisfiable ==
            si_decide_sat_trace(s, d, trans).satisfiable);
  }
  SECTION("an upward push resets and regenerates with fresh ids") {
    // ∃R⁻.(∀R.¬A) ⊓ ∃R.B: expanding the first child pushes ¬A into the root
    ConceptId d = nnf(s, s.make_and(s.make_exists(inv(r), s.make_forall(r, s.make_not(a))),
                                    s.make_exists(r, b)));
    std::vector<TraceEvent> events;
    EngineOptions opts;
    opts.trace = [&](const TraceEvent& e) { events.push_back(e); };
    SiVerdict v = si_decide_sat_trace(s, d, {}, opts);
    CHECK(v.satisfiable);
    CHECK(v.stats.resets >= 1);
    bool saw_reset = false;
    std::map<ConceptId, int> creations_per_filler;
    for (const TraceEvent& e : events) {
      if (e.kind == TraceEvent::Kind::Reset) saw_reset = true;
      if (e.kind == TraceEvent::Kind::NodeCreated) creations_per_filler[e.concept_id]++;
    }
    CHECK(saw_reset);
    // the subtree deleted by the reset reappears under a fresh id
    bool regenerated = false;
    for (const auto& [filler, count] : creations_per_filler)
      if (count > 1) regenerated = true;
    CHECK(regenerated);
    CHECK(si_decide_sat(s, d, {}).satisfiable == v.satisfiable);
  }
  SECTION("no inverse roles, no resets") {
    ConceptId d = nnf(s, s.make_and(s.make_exists(r, a), s.make_exists(r, b)));
    SiVerdict v = si_decide_sat_trace(s, d, {});
    CHECK(v.satisfiable);
    CHECK(v.stats.resets == 0);
  }
}

TEST_CASE("cross-engine agreement on random SI concepts", "[property]") {
  ConceptStore s;
  gen::Rng rng(888999);
  gen::Config cfg;
  cfg.inverse = true;
  int sat_count = 0, unsat_count = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Symbol> trans;
    for (int k = 0; k < cfg.roles; ++k)
      if (gen::draw(rng, 3) == 0) trans.push_back(s.make_role("R" + std::to_string(k + 1)).name);
    ConceptId d = nnf(s, gen::random_conjunction(s, rng, cfg, 2, 3));
    SiVerdict whole = si_decide_sat(s, d, trans);
    SiVerdict trace = si_decide_sat_trace(s, d, trans);
    RoleBox rb = close_hierarchy(trans, {});
    EngineVerdict shiq = decide_sat(s, d, rb);
    INFO(s.to_sexpr(d));
    CHECK(whole.satisfiable == trace.satisfiable);
    CHECK(whole.satisfiable == shiq.satisfiable);
    (whole.satisfiable ? sat_count : unsat_count)++;
    // B ⊆ L on every witness node
    if (whole.satisfiable)
      for (const SiNode& n : whole.witness.nodes)
        CHECK(std::includes(n.l_label.begin(), n.l_label.end(), n.b_label.begin(),
                            n.b_label.end()));
  }
  CHECK(sat_count > 20);
  CHECK(unsat_count > 10);
}

TEST_CASE("the B/L restriction property holds along transitive paths", "[property]") {
  ConceptStore s;
  gen::Rng rng(246810);
  gen::Config cfg;
  cfg.inverse = true;
  int paths_checked = 0;
  for (int i = 0; i < 120 && paths_checked < 15; ++i) {
    std::vector<Symbol> trans{s.make_role("R1").name};
    ConceptId d = nnf(s, gen::random_conjunction(s, rng, cfg, 2, 3));
    SiVerdict v = si_decide_sat(s, d, trans);
    if (!v.satisfiable) continue;
    const SiTree& t = v.witness;
    // complete witness: scan consecutive equal transitive edges x_i -> x_{i+1}
    for (NodeId mid = 0; mid < t.nodes.size(); ++mid) {
      const SiNode& m = t.nodes[mid];
      if (!m.has_in_role) continue;
      Role role = Role::from_raw(m.in_role_raw);
      if (!flat::contains(trans, role.name)) continue;
      for (NodeId next : m.children) {
        if (t.nodes[next].in_role_raw != m.in_role_raw) continue;
        ++paths_checked;
        // L(x_{i+1})/Inv(R) ⊆ L(x_i)/Inv(R)
        auto upper = forall_restriction(s, t.nodes[next].l_label, role);
        auto lower = forall_restriction(s, m.l_label, role);
        CHECK(std::includes(lower.begin(), lower.end(), upper.begin(), upper.end()));
        // B(x_i) ⊆ B(x_{i+1}) ∪ {C_i} with C_i the filler that created x_i
        for (ConceptId c : m.b_label) {
          bool ok = flat::contains(t.nodes[next].b_label, c) || c == m.created_filler;
          INFO(s.to_sexpr(d));
          CHECK(ok);
        }
      }
    }
  }
  CHECK(paths_checked >= 5);
}
