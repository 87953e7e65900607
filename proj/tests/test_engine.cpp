#include "doctest.h"

#include "dyncomp/builtins.hpp"
#include "dyncomp/parse.hpp"
#include "dyncomp/program.hpp"

using namespace dyncomp;

namespace {

Schema graph_schema() {
    Schema s;
    s.add_relation("E", 2);
    return s;
}

Modification ins(const Structure& db, const std::string& a, const std::string& b) {
    return {ModKind::Insert, "E", {db.element(a), db.element(b)}};
}

Modification del(const Structure& db, const std::string& a, const std::string& b) {
    return {ModKind::Delete, "E", {db.element(a), db.element(b)}};
}

}  // namespace

TEST_CASE("step updates all auxiliary symbols against the pre-step state") {
    // swap program: A and B exchange values every step; a sequential engine
    // would collapse them onto one value
    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.aux_schema.add_relation("A", 0);
    p.aux_schema.add_relation("B", 0);
    p.aux_schema.add_relation("Q", 0);
    p.query_symbol = "Q";
    UpdateRule a_rule{{"u", "v"}, {}, rel("B", {}), nullptr};
    UpdateRule b_rule{{"u", "v"}, {}, rel("A", {}), nullptr};
    UpdateRule q_rule{{"u", "v"}, {}, rel("Q", {}), nullptr};
    for (ModKind k : {ModKind::Insert, ModKind::Delete}) {
        p.rules[{"A", k, "E"}] = a_rule;
        p.rules[{"B", k, "E"}] = b_rule;
        p.rules[{"Q", k, "E"}] = q_rule;
    }
    p.validate();
    Structure db(p.input_schema, 2);
    ProgramState s = init_state(p, db);
    s.structure.add_tuple("A", {});  // A=true, B=false
    for (int i = 0; i < 5; ++i) {
        bool a_before = s.structure.holds("A", {});
        bool b_before = s.structure.holds("B", {});
        s = step(p, s, {ModKind::Insert, "E", {0, 1}});
        CHECK(s.structure.holds("A", {}) == b_before);
        CHECK(s.structure.holds("B", {}) == a_before);
    }
}

TEST_CASE("step rejects unsupported kinds and bad modifications") {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, 3);
    ProgramState s = init_state(p, db);
    CHECK_THROWS_WITH_AS(step(p, s, {ModKind::Delete, "E", {0, 1}}),
                         "program does not support deletions", Error);
    CHECK_THROWS_AS(step(p, s, {ModKind::Insert, "F", {0, 1}}), Error);
    CHECK_THROWS_AS(step(p, s, {ModKind::Insert, "E", {0}}), Error);
}

TEST_CASE("run reports the failing index") {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, 3);
    ProgramState s = init_state(p, db);
    ModSequence ms{ins(db, "e0", "e1"), del(db, "e0", "e1")};
    try {
        run(p, s, ms);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("modification 1:") == 0);
    }
    CHECK(run(p, s, {}).structure == s.structure);
}

TEST_CASE("three-clique program replays the worked two-relation scenario") {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, std::vector<std::string>{"a1", "a2", "a3", "a4", "a5"});
    db.add_tuple("E", {db.element("a2"), db.element("a3")});
    db.add_tuple("E", {db.element("a3"), db.element("a4")});
    db.add_tuple("E", {db.element("a1"), db.element("a5")});
    ProgramState s = init_state(p, db);
    // initially R holds exactly (a2,a4) and (a4,a2): common neighbor a3
    std::set<std::vector<ElementId>> expected{{db.element("a2"), db.element("a4")},
                                              {db.element("a4"), db.element("a2")}};
    CHECK(s.structure.relation("R") == expected);
    CHECK_FALSE(s.query_bit(p));
    ProgramState s2 = step(p, s, ins(db, "a2", "a5"));
    CHECK(s2.structure.holds("R", {db.element("a1"), db.element("a2")}));
    CHECK(s2.structure.holds("R", {db.element("a2"), db.element("a1")}));
    CHECK(s2.structure.holds("R", {db.element("a3"), db.element("a5")}));
    CHECK(s2.structure.holds("R", {db.element("a5"), db.element("a3")}));
    CHECK_FALSE(s2.query_bit(p));
    // completing a triangle through the stored pair flips Q
    ProgramState s3 = step(p, s2, ins(db, "a2", "a4"));
    CHECK(s3.query_bit(p));
}

TEST_CASE("three-clique initialization matches the static answer") {
    DynamicProgram p = builtin_three_clique();
    Structure k3(p.input_schema, 3);
    k3.add_tuple("E", {0, 1});
    k3.add_tuple("E", {1, 2});
    k3.add_tuple("E", {0, 2});
    CHECK(init_state(p, k3).query_bit(p));
    Structure single(p.input_schema, 3);
    single.add_tuple("E", {0, 1});
    ProgramState s = init_state(p, single);
    CHECK(s.structure.relation("R").empty());
    CHECK_FALSE(s.query_bit(p));
}

TEST_CASE("three-clique difftest is clean on loop-free sequences") {
    DifftestParams params;
    params.domain_size = 5;
    params.sequences = 100;
    params.length = 12;
    params.seed = 7;
    params.allow_loops = false;
    DynamicProgram p = builtin_three_clique();
    p.supports_delete = false;
    DifftestReport r = difftest(p, three_clique_sentence(), params);
    CHECK(r.ok());
    CHECK(r.checks == 100 * 13);
}

TEST_CASE("difftest flags a corrupted rule and is seed-reproducible") {
    DynamicProgram p = builtin_three_clique();
    // mutation control: drop the retention disjunct R(x,y) from the R rule
    UpdateRule& r = p.rules[{"R", ModKind::Insert, "E"}];
    r.formula = parse_formula(
        "u != v & x != y & ((E{u,y} & v = x) | (E{u,x} & v = y) | (E{v,y} & u = x) | (E{v,x} & u "
        "= y))",
        p.combined_schema());
    DifftestParams params;
    params.sequences = 200;
    params.length = 12;
    params.seed = 3;
    params.allow_loops = false;
    DifftestReport bad = difftest(p, three_clique_sentence(), params);
    CHECK_FALSE(bad.ok());
    DifftestReport bad2 = difftest(p, three_clique_sentence(), params);
    REQUIRE(bad.mismatches.size() == bad2.mismatches.size());
    CHECK(bad.mismatches[0].sequence == bad2.mismatches[0].sequence);
    CHECK(bad.mismatches[0].prefix == bad2.mismatches[0].prefix);
    CHECK(bad.mismatches[0].mods == bad2.mismatches[0].mods);
}

TEST_CASE("max-outdegree program counts via clamped functions") {
    DynamicProgram p = builtin_max_outdegree();
    CHECK_FALSE(p.is_dynprop());
    Structure db(p.input_schema, 3);
    ProgramState s = init_state(p, db);
    // empty graph: every node has outdegree 0 = maxdeg
    CHECK(s.structure.relation("Q").size() == 3);
    CHECK(s.structure.apply_function("maxdeg", {}) == 0);
    s = step(p, s, {ModKind::Insert, "E", {1, 2}});
    CHECK(s.structure.apply_function("numEdges", {1}) == 1);
    CHECK(s.structure.apply_function("maxdeg", {}) == 1);
    CHECK(s.structure.relation("Q") == std::set<std::vector<ElementId>>{{1}});
    // duplicate insertion: guarded by !E(u,v), nothing moves
    ProgramState s2 = step(p, s, {ModKind::Insert, "E", {1, 2}});
    CHECK(s2.structure.apply_function("numEdges", {1}) == 1);
    CHECK(s2.structure.relation("Q") == s.structure.relation("Q"));
    // a tie puts both nodes into Q
    s = step(p, s, {ModKind::Insert, "E", {0, 2}});
    CHECK(s.structure.relation("Q") == std::set<std::vector<ElementId>>{{0}, {1}});
    // deletion rolls back
    s = step(p, s, {ModKind::Delete, "E", {1, 2}});
    CHECK(s.structure.apply_function("numEdges", {1}) == 0);
    CHECK(s.structure.relation("Q") == std::set<std::vector<ElementId>>{{0}});
}

TEST_CASE("max-outdegree differential test is clean outside saturation") {
    for (int n : {3, 4, 5}) {
        DifftestReport r = difftest_max_outdegree(n, 60, 12, 11 + n);
        INFO("n = ", n);
        CHECK(r.ok());
        CHECK(r.checks > 0);
    }
}

TEST_CASE("the as-written maximum update term is a negative exhibit") {
    // replacing succ(maxdeg) by succ(u) (reading the node as a counter)
    // breaks maintenance
    DynamicProgram p = builtin_max_outdegree();
    Schema schema = p.combined_schema();
    p.rules[{"maxdeg", ModKind::Insert, "E"}].term =
        parse_term("ite(!E(u,v) & maxdeg = numEdges(u), succ(u), maxdeg)", schema);
    p.rules[{"Q", ModKind::Insert, "E"}].formula = parse_formula(
        "ite(!E(u,v) & x = u, succ(numEdges(x)), numEdges(x)) = "
        "ite(!E(u,v) & maxdeg = numEdges(u), succ(u), maxdeg)",
        schema);
    Structure db(p.input_schema, 4);
    ProgramState s = init_state(p, db);
    // ins(2,0): outdegrees 0,0,1,0 -> maxdeg should be element 1, Q={2};
    // the as-written term sets maxdeg to succ(2)=3 instead
    s = step(p, s, {ModKind::Insert, "E", {2, 0}});
    CHECK(s.structure.apply_function("maxdeg", {}) == 3);
    CHECK(s.structure.relation("Q") != std::set<std::vector<ElementId>>{{2}});
}

TEST_CASE("init_state validates the input schema") {
    DynamicProgram p = builtin_three_clique();
    Schema other;
    other.add_relation("F", 2);
    Structure db(other, 3);
    CHECK_THROWS_AS(init_state(p, db), Error);
}

TEST_CASE("input_part extracts exactly the input database") {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, 4);
    db.add_tuple("E", {0, 1});
    ProgramState s = init_state(p, db);
    s = step(p, s, {ModKind::Insert, "E", {1, 2}});
    Structure in = input_part(p, s);
    CHECK(in.schema() == p.input_schema);
    CHECK(in.relation("E") == std::set<std::vector<ElementId>>{{0, 1}, {1, 2}});
}
