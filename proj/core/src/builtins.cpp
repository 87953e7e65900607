#include "dyncomp/builtins.hpp"

#include <random>

#include "dyncomp/parse.hpp"

namespace dyncomp {

DynamicProgram builtin_three_clique() {
    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.aux_schema.add_relation("Q", 0);
    p.aux_schema.add_relation("R", 2);
    p.query_symbol = "Q";
    p.initializer.kind = Initializer::Kind::ThreeClique;
    Schema schema = p.combined_schema();

    UpdateRule r_rule;
    r_rule.mod_vars = {"u", "v"};
    r_rule.tuple_vars = {"x", "y"};
    r_rule.formula = parse_formula(
        "R(x,y) | (u != v & x != y & ((E{u,y} & v = x) | (E{u,x} & v = y) | (E{v,y} & u = x) | "
        "(E{v,x} & u = y)))",
        schema);
    UpdateRule q_rule;
    q_rule.mod_vars = {"u", "v"};
    q_rule.formula = lor({rel("Q", {}), rel("R", {var("u"), var("v")})});
    p.rules[{"R", ModKind::Insert, "E"}] = r_rule;
    p.rules[{"Q", ModKind::Insert, "E"}] = q_rule;
    p.supports_insert = true;
    p.supports_delete = false;
    p.validate();
    return p;
}

FormulaPtr three_clique_sentence() {
    Schema schema;
    schema.add_relation("E", 2);
    return parse_formula(
        "exists x exists y exists z (x != y & x != z & y != z & E{x,y} & E{x,z} & E{y,z})",
        schema);
}

DynamicProgram builtin_max_outdegree() {
    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.aux_schema.add_relation("Q", 1);
    p.aux_schema.add_function("succ", 1);
    p.aux_schema.add_function("pred", 1);
    p.aux_schema.add_function("numEdges", 1);
    p.aux_schema.add_function("numNodes", 1);
    p.aux_schema.add_function("zero", 0);
    p.aux_schema.add_function("one", 0);
    p.aux_schema.add_function("maxdeg", 0);
    p.query_symbol = "Q";
    p.initializer.kind = Initializer::Kind::MaxOutdegree;
    Schema schema = p.combined_schema();

    auto fn_rule = [&](std::vector<std::string> tuple_vars, const std::string& text) {
        UpdateRule r;
        r.mod_vars = {"u", "v"};
        r.tuple_vars = std::move(tuple_vars);
        r.term = parse_term(text, schema);
        return r;
    };
    auto rel_rule = [&](std::vector<std::string> tuple_vars, const std::string& text) {
        UpdateRule r;
        r.mod_vars = {"u", "v"};
        r.tuple_vars = std::move(tuple_vars);
        r.formula = parse_formula(text, schema);
        return r;
    };

    const std::string ins_edges = "ite(!E(u,v) & x = u, succ(numEdges(x)), numEdges(x))";
    const std::string ins_max = "ite(!E(u,v) & maxdeg = numEdges(u), succ(maxdeg), maxdeg)";
    const std::string del_edges = "ite(E(u,v) & x = u, pred(numEdges(x)), numEdges(x))";
    const std::string del_max =
        "ite(E(u,v) & maxdeg = numEdges(u) & numNodes(maxdeg) = one, pred(maxdeg), maxdeg)";

    p.rules[{"numEdges", ModKind::Insert, "E"}] = fn_rule({"x"}, ins_edges);
    p.rules[{"numEdges", ModKind::Delete, "E"}] = fn_rule({"x"}, del_edges);
    p.rules[{"numNodes", ModKind::Insert, "E"}] = fn_rule(
        {"x"},
        "ite(!E(u,v) & x = numEdges(u), pred(numNodes(x)), "
        "ite(!E(u,v) & x = succ(numEdges(u)), succ(numNodes(x)), numNodes(x)))");
    p.rules[{"numNodes", ModKind::Delete, "E"}] = fn_rule(
        {"x"},
        "ite(E(u,v) & x = numEdges(u), pred(numNodes(x)), "
        "ite(E(u,v) & x = pred(numEdges(u)), succ(numNodes(x)), numNodes(x)))");
    p.rules[{"maxdeg", ModKind::Insert, "E"}] = fn_rule({}, ins_max);
    p.rules[{"maxdeg", ModKind::Delete, "E"}] = fn_rule({}, del_max);
    p.rules[{"Q", ModKind::Insert, "E"}] = rel_rule({"x"}, ins_edges + " = " + ins_max);
    p.rules[{"Q", ModKind::Delete, "E"}] = rel_rule({"x"}, del_edges + " = " + del_max);
    p.rules[{"succ", ModKind::Insert, "E"}] = fn_rule({"x"}, "succ(x)");
    p.rules[{"succ", ModKind::Delete, "E"}] = fn_rule({"x"}, "succ(x)");
    p.rules[{"pred", ModKind::Insert, "E"}] = fn_rule({"x"}, "pred(x)");
    p.rules[{"pred", ModKind::Delete, "E"}] = fn_rule({"x"}, "pred(x)");
    p.rules[{"zero", ModKind::Insert, "E"}] = fn_rule({}, "zero");
    p.rules[{"zero", ModKind::Delete, "E"}] = fn_rule({}, "zero");
    p.rules[{"one", ModKind::Insert, "E"}] = fn_rule({}, "one");
    p.rules[{"one", ModKind::Delete, "E"}] = fn_rule({}, "one");
    p.validate();
    return p;
}

DifftestReport difftest_max_outdegree(int domain_size, int sequences, int length,
                                      std::uint64_t seed) {
    DynamicProgram p = builtin_max_outdegree();
    DifftestReport report;
    report.params = {domain_size, sequences, length, seed, true};
    std::mt19937_64 rng(seed);
    std::size_t n = static_cast<std::size_t>(domain_size);
    for (int seq = 0; seq < sequences; ++seq) {
        Structure db(p.input_schema, n);
        ProgramState state = init_state(p, db);
        ModSequence mods;
        bool saturated = false;
        for (int prefix = 0;; ++prefix) {
            std::map<ElementId, std::size_t> outdeg;
            for (ElementId a : db.domain()) outdeg[a] = 0;
            for (const auto& t : db.relation("E")) ++outdeg[t[0]];
            std::size_t maxdeg = 0;
            for (const auto& [a, d] : outdeg) maxdeg = std::max(maxdeg, d);
            std::map<std::size_t, std::size_t> count;
            for (const auto& [a, d] : outdeg) ++count[d];
            if (maxdeg >= n || (maxdeg >= 1 && count[maxdeg] >= n)) saturated = true;
            if (!saturated) {
                std::set<std::vector<ElementId>> expected;
                for (const auto& [a, d] : outdeg)
                    if (d == maxdeg) expected.insert({a});
                bool same = state.structure.relation("Q") == expected;
                ++report.checks;
                if (!same) {
                    report.mismatches.push_back({seq, prefix, true, false, mods});
                    break;
                }
            }
            if (prefix == length) break;
            Modification m;
            m.kind = rng() % 2 == 0 ? ModKind::Insert : ModKind::Delete;
            m.relation = "E";
            m.tuple = {db.domain()[rng() % n], db.domain()[rng() % n]};
            mods.push_back(m);
            db = apply_modification(db, m);
            state = step(p, state, m);
        }
    }
    return report;
}

}  // namespace dyncomp
