#include "doctest.h"

#include "dyncomp/padding.hpp"

using namespace dyncomp;

TEST_CASE("padding layout arithmetic") {
    PaddingLayout t{PaddingVariant::Ternary, 2};
    CHECK(t.num_graphs() == 16);
    CHECK(t.domain_size() == 2 + 16);
    CHECK(t.graph_element(0) == 2);
    CHECK(t.graph_element(15) == 17);
    CHECK(t.edge_bit(0, 1) == 2);
    CHECK(t.edge_bit(1, 0) == 4);
    CHECK(t.code_with(0, 0, 1, ModKind::Insert) == 2);
    CHECK(t.code_with(7, 1, 0, ModKind::Delete) == 3);
    PaddingLayout b{PaddingVariant::Binary, 2};
    CHECK(b.domain_size() == 2 + 16 + 16 * 4);
    CHECK(b.intermediate(0, 0, ModKind::Insert) == 18);
    CHECK(b.intermediate(0, 0, ModKind::Delete) == 19);
    CHECK(b.intermediate(3, 1, ModKind::Insert) == 18 + 3 * 4 + 2);
}

TEST_CASE("code_of reads the adjacency bits off the graph part") {
    PaddingLayout t{PaddingVariant::Ternary, 3};
    Schema sch;
    sch.add_relation("E", 2);
    Structure db(sch, t.domain_size());
    CHECK(t.code_of(db) == 0);
    db.add_tuple("E", {0, 1});
    CHECK(t.code_of(db) == t.edge_bit(0, 1));
    db.add_tuple("E", {2, 2});
    CHECK(t.code_of(db) == (t.edge_bit(0, 1) | t.edge_bit(2, 2)));
    // edges outside the graph part do not contribute
    db.add_tuple("E", {5, 6});
    CHECK(t.code_of(db) == (t.edge_bit(0, 1) | t.edge_bit(2, 2)));
}

TEST_CASE("the padding programs keep constant-size update formulas") {
    std::vector<bool> table(16, false);
    table[1] = true;
    DynamicProgram t = build_padding_program(PaddingVariant::Ternary, 2, table);
    CHECK(t.arity() == 1);  // unary truth-table relation, 0-ary query
    CHECK_FALSE(t.is_dynprop());
    CHECK(t.aux_schema.function_arity("f_ins") == 3);
    DynamicProgram b = build_padding_program(PaddingVariant::Binary, 2, table);
    CHECK(b.aux_schema.function_arity("f_ins") == 2);
    CHECK(b.aux_schema.function_arity("s_ins") == 2);
    CHECK_THROWS_AS(build_padding_program(PaddingVariant::Ternary, 2, std::vector<bool>(5)),
                    Error);
    CHECK_THROWS_AS(build_padding_program(PaddingVariant::Ternary, 9, {}), Error);
}

TEST_CASE("the pointer tracks the current graph and answers the table") {
    // query: "the graph has an edge from the first to the second node"
    PaddingLayout layout{PaddingVariant::Ternary, 2};
    std::vector<bool> table(16, false);
    for (std::uint64_t c = 0; c < 16; ++c) table[c] = (c & layout.edge_bit(0, 1)) != 0;
    DynamicProgram p = build_padding_program(PaddingVariant::Ternary, 2, table);
    Structure db(p.input_schema, layout.domain_size());
    ProgramState s = init_state(p, db);
    CHECK(s.structure.apply_function("p", {}) == s.structure.domain()[layout.graph_element(0)]);
    CHECK_FALSE(s.query_bit(p));
    s = step(p, s, {ModKind::Insert, "E", {0, 1}});
    std::uint64_t code = layout.edge_bit(0, 1);
    CHECK(s.structure.apply_function("p", {}) == s.structure.domain()[layout.graph_element(code)]);
    CHECK(s.query_bit(p));
    s = step(p, s, {ModKind::Insert, "E", {1, 1}});
    CHECK(s.query_bit(p));
    s = step(p, s, {ModKind::Delete, "E", {0, 1}});
    CHECK_FALSE(s.query_bit(p));
    CHECK(layout.code_of(input_part(p, s)) == layout.edge_bit(1, 1));
}

TEST_CASE("padding differential tests pass for both variants") {
    PaddingCheckReport t2 = difftest_padding(PaddingVariant::Ternary, 2, 1001, 40, 15, 51);
    CHECK(t2.ok());
    CHECK(t2.checks == 40 * 16 * 2);
    PaddingCheckReport t3 = difftest_padding(PaddingVariant::Ternary, 3, 1002, 10, 12, 52);
    CHECK(t3.ok());
    PaddingCheckReport b2 = difftest_padding(PaddingVariant::Binary, 2, 1003, 40, 15, 53);
    CHECK(b2.ok());
}

TEST_CASE("a stuck pointer is caught by the differential test") {
    std::vector<bool> table(16, false);
    DynamicProgram bad = build_padding_program(PaddingVariant::Ternary, 2, table);
    // mutation control: freeze the pointer on insertions
    bad.rules.at({"p", ModKind::Insert, "E"}).term = apply("p", {});
    PaddingCheckReport r = difftest_padding(bad, 30, 12, 54);
    CHECK_FALSE(r.ok());
}
