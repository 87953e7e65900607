#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dyncomp/structure.hpp"

using namespace dyncomp;

namespace {

Schema graph_schema() {
    Schema s;
    s.add_relation("E", 2);
    return s;
}

Structure graph(const std::vector<std::string>& labels,
                const std::vector<std::pair<std::string, std::string>>& edges) {
    Structure g(graph_schema(), labels);
    for (const auto& [a, b] : edges) g.add_tuple("E", {g.element(a), g.element(b)});
    return g;
}

}  // namespace

TEST_CASE("schema rejects duplicate names and merge detects clashes") {
    Schema s;
    s.add_relation("E", 2);
    CHECK_THROWS_AS(s.add_function("E", 1), Error);
    Schema t;
    t.add_relation("E", 2);
    CHECK_THROWS_AS(Schema::merge(s, t), Error);
    t = Schema();
    t.add_relation("R", 2);
    Schema m = Schema::merge(s, t);
    CHECK(m.has_relation("E"));
    CHECK(m.has_relation("R"));
    CHECK(m.max_relation_arity() == 2);
}

TEST_CASE("apply_modification inserts, deletes, and ignores duplicates") {
    Structure g = graph({"a", "b", "c"}, {});
    Modification ins{ModKind::Insert, "E", {g.element("a"), g.element("b")}};
    Structure g1 = apply_modification(g, ins);
    CHECK(g1.holds("E", {g.element("a"), g.element("b")}));
    CHECK_FALSE(g.holds("E", {g.element("a"), g.element("b")}));  // value semantics
    CHECK(apply_modification(g1, ins) == g1);                     // duplicate insert: no-op
    Modification del{ModKind::Delete, "E", {g.element("a"), g.element("b")}};
    CHECK(apply_modification(g1, del) == g);  // ins then del restores
    CHECK(apply_modification(g, del) == g);   // deleting absent tuple: no-op
}

TEST_CASE("induced_substructure keeps ids and intersects relations") {
    Structure g = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    std::set<ElementId> d{g.element("a"), g.element("b")};
    Structure sub = induced_substructure(g, d);
    CHECK(sub.size() == 2);
    CHECK(sub.holds("E", {g.element("a"), g.element("b")}));
    CHECK(sub.relation("E").size() == 1);
    // full domain gives the structure itself
    std::set<ElementId> all(g.domain().begin(), g.domain().end());
    CHECK(induced_substructure(g, all) == g);
}

TEST_CASE("induced_substructure requires constants and function closure") {
    Schema s = graph_schema();
    s.add_constant("t");
    Structure g(s, std::vector<std::string>{"a", "b"});
    g.set_constant("t", g.element("b"));
    CHECK_THROWS_AS(induced_substructure(g, {g.element("a")}), Error);
    Schema sf;
    sf.add_function("f", 1);
    Structure h(sf, std::vector<std::string>{"a", "b"});
    h.function("f").def = h.element("b");
    CHECK_THROWS_AS(induced_substructure(h, {h.element("a")}), Error);
}

TEST_CASE("induced_substructure commutes with apply_modification inside d") {
    Structure g = graph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
    std::set<ElementId> d{g.element("a"), g.element("b"), g.element("c")};
    Modification m{ModKind::Insert, "E", {g.element("b"), g.element("c")}};
    CHECK(induced_substructure(apply_modification(g, m), d) ==
          apply_modification(induced_substructure(g, d), m));
}

TEST_CASE("atomic_type lists satisfied atoms canonically") {
    Structure g = graph({"a", "b"}, {{"a", "b"}});
    AtomicType ab = atomic_type(g, {g.element("a"), g.element("b")});
    auto has = [&](const AtomicType& t, const std::string& atom) {
        return std::find(t.atoms.begin(), t.atoms.end(), atom) != t.atoms.end();
    };
    CHECK(has(ab, "E(x1,x2)"));
    CHECK_FALSE(has(ab, "E(x2,x1)"));
    CHECK_FALSE(has(ab, "x1=x2"));
    AtomicType aa = atomic_type(g, {g.element("a"), g.element("a")});
    CHECK(has(aa, "x1=x2"));
    CHECK(ab != aa);
    CHECK(ab.key() != aa.key());
}

TEST_CASE("atomic_type is invariant under isomorphism") {
    Structure g = graph({"a", "b", "c"}, {{"a", "b"}});
    Structure h = graph({"x", "y", "z"}, {{"y", "z"}});
    auto pi = find_isomorphism(g, h);
    REQUIRE(pi.has_value());
    for (ElementId e1 : g.domain())
        for (ElementId e2 : g.domain())
            CHECK(atomic_type(g, {e1, e2}) == atomic_type(h, {pi->at(e1), pi->at(e2)}));
}

TEST_CASE("find_isomorphism on single-edge graphs and a negative case") {
    Structure g = graph({"a", "b"}, {{"a", "b"}});
    Structure h = graph({"x", "y"}, {{"y", "x"}});
    auto pi = find_isomorphism(g, h);
    REQUIRE(pi.has_value());
    CHECK(pi->at(g.element("a")) == h.element("y"));
    CHECK(pi->at(g.element("b")) == h.element("x"));
    // triangle vs path: not isomorphic
    Structure k3 = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    Structure p3 = graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "b"}});
    CHECK_FALSE(find_isomorphism(k3, p3).has_value());
}

TEST_CASE("find_isomorphism returns the lexicographically least witness") {
    // edgeless graphs: every bijection works; the least is the index-wise map
    Structure g = graph({"a", "b", "c"}, {});
    Structure h = graph({"x", "y", "z"}, {});
    auto pi = find_isomorphism(g, h);
    REQUIRE(pi.has_value());
    CHECK(pi->at(g.element("a")) == h.element("x"));
    CHECK(pi->at(g.element("b")) == h.element("y"));
    CHECK(pi->at(g.element("c")) == h.element("z"));
}

TEST_CASE("find_isomorphism respects constants and functions") {
    Schema s = graph_schema();
    s.add_constant("t");
    Structure g(s, std::vector<std::string>{"a", "b"});
    g.set_constant("t", g.element("a"));
    Structure h(s, std::vector<std::string>{"x", "y"});
    h.set_constant("t", h.element("y"));
    auto pi = find_isomorphism(g, h);
    REQUIRE(pi.has_value());
    CHECK(pi->at(g.element("a")) == h.element("y"));
}

TEST_CASE("all_tuples enumerates in lexicographic domain order") {
    Structure g = graph({"a", "b"}, {});
    auto ts = g.all_tuples(2);
    REQUIRE(ts.size() == 4);
    CHECK(ts[0] == std::vector<ElementId>{g.element("a"), g.element("a")});
    CHECK(ts[3] == std::vector<ElementId>{g.element("b"), g.element("b")});
    CHECK(g.all_tuples(0) == std::vector<std::vector<ElementId>>{{}});
}
