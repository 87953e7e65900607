#include "dyncomp/padding.hpp"

#include <random>

namespace dyncomp {

std::uint64_t PaddingLayout::code_of(const Structure& db) const {
    const auto& dom = db.domain();
    std::uint64_t code = 0;
    for (int i = 0; i < n_plus; ++i)
        for (int j = 0; j < n_plus; ++j)
            if (db.holds("E", {dom[i], dom[j]})) code |= edge_bit(i, j);
    return code;
}

namespace {

UpdateRule fn_rule(std::vector<std::string> tuple_vars, TermPtr term) {
    UpdateRule r;
    r.mod_vars = {"u", "v"};
    r.tuple_vars = std::move(tuple_vars);
    r.term = std::move(term);
    return r;
}

UpdateRule rel_rule(std::vector<std::string> tuple_vars, FormulaPtr formula) {
    UpdateRule r;
    r.mod_vars = {"u", "v"};
    r.tuple_vars = std::move(tuple_vars);
    r.formula = std::move(formula);
    return r;
}

}  // namespace

DynamicProgram build_padding_program(PaddingVariant variant, int n_plus,
                                     std::vector<bool> truth_table) {
    if (n_plus < 1 || n_plus > 4) throw Error("padding: node count out of range");
    PaddingLayout layout{variant, n_plus};
    if (truth_table.size() != layout.num_graphs())
        throw Error("padding: truth table must have one entry per graph code");

    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.aux_schema.add_relation("Q", 0);
    p.aux_schema.add_relation("R_Q", 1);
    p.aux_schema.add_function("p", 0);
    p.query_symbol = "Q";
    p.initializer.kind = Initializer::Kind::Padding;
    p.initializer.padding = PaddingInit{variant, n_plus, std::move(truth_table)};

    auto pointer = apply("p", {});
    TermPtr move_ins, move_del;
    if (variant == PaddingVariant::Ternary) {
        p.aux_schema.add_function("f_ins", 3);
        p.aux_schema.add_function("f_del", 3);
        move_ins = apply("f_ins", {var("u"), var("v"), pointer});
        move_del = apply("f_del", {var("u"), var("v"), pointer});
        for (const char* f : {"f_ins", "f_del"}) {
            auto id = apply(f, {var("a"), var("b"), var("c")});
            p.rules[{f, ModKind::Insert, "E"}] = fn_rule({"a", "b", "c"}, id);
            p.rules[{f, ModKind::Delete, "E"}] = fn_rule({"a", "b", "c"}, id);
        }
    } else {
        p.aux_schema.add_function("f_ins", 2);
        p.aux_schema.add_function("f_del", 2);
        p.aux_schema.add_function("s_ins", 2);
        p.aux_schema.add_function("s_del", 2);
        move_ins = apply("s_ins", {var("v"), apply("f_ins", {var("u"), pointer})});
        move_del = apply("s_del", {var("v"), apply("f_del", {var("u"), pointer})});
        for (const char* f : {"f_ins", "f_del", "s_ins", "s_del"}) {
            auto id = apply(f, {var("a"), var("b")});
            p.rules[{f, ModKind::Insert, "E"}] = fn_rule({"a", "b"}, id);
            p.rules[{f, ModKind::Delete, "E"}] = fn_rule({"a", "b"}, id);
        }
    }
    p.rules[{"p", ModKind::Insert, "E"}] = fn_rule({}, move_ins);
    p.rules[{"p", ModKind::Delete, "E"}] = fn_rule({}, move_del);
    p.rules[{"Q", ModKind::Insert, "E"}] = rel_rule({}, rel("R_Q", {move_ins}));
    p.rules[{"Q", ModKind::Delete, "E"}] = rel_rule({}, rel("R_Q", {move_del}));
    auto rq_id = rel("R_Q", {var("x")});
    p.rules[{"R_Q", ModKind::Insert, "E"}] = rel_rule({"x"}, rq_id);
    p.rules[{"R_Q", ModKind::Delete, "E"}] = rel_rule({"x"}, rq_id);
    p.validate();
    return p;
}

void init_padding_aux(const PaddingInit& init, Structure& state) {
    PaddingLayout layout{init.variant, init.n_plus};
    if (state.size() != layout.domain_size())
        throw Error("padding: domain must have " + std::to_string(layout.domain_size()) +
                    " elements");
    const auto& dom = state.domain();
    auto at = [&](std::uint64_t pos) { return dom[static_cast<std::size_t>(pos)]; };

    std::uint64_t code = layout.code_of(state);
    state.function("p") = FunctionInterp{at(layout.graph_element(code)), {}};
    std::set<std::vector<ElementId>> rq;
    for (std::uint64_t g = 0; g < layout.num_graphs(); ++g)
        if (init.truth_table[static_cast<std::size_t>(g)]) rq.insert({at(layout.graph_element(g))});
    state.set_relation("R_Q", std::move(rq));
    if (init.truth_table[static_cast<std::size_t>(code)]) state.add_tuple("Q", {});

    auto fill = [&](const std::string& name, ModKind kind) {
        auto& fi = state.function(name);
        fi.def = dom.front();
        fi.except.clear();
        for (std::uint64_t g = 0; g < layout.num_graphs(); ++g)
            for (int a = 0; a < init.n_plus; ++a)
                for (int b = 0; b < init.n_plus; ++b)
                    fi.set({dom[a], dom[b], at(layout.graph_element(g))},
                           at(layout.graph_element(layout.code_with(g, a, b, kind))));
    };
    auto fill_two_stage = [&](const std::string& first, const std::string& second, ModKind kind) {
        auto& f1 = state.function(first);
        auto& f2 = state.function(second);
        f1.def = f2.def = dom.front();
        f1.except.clear();
        f2.except.clear();
        for (std::uint64_t g = 0; g < layout.num_graphs(); ++g)
            for (int a = 0; a < init.n_plus; ++a) {
                ElementId mid = at(layout.intermediate(g, a, kind));
                f1.set({dom[a], at(layout.graph_element(g))}, mid);
                for (int b = 0; b < init.n_plus; ++b)
                    f2.set({dom[b], mid}, at(layout.graph_element(layout.code_with(g, a, b, kind))));
            }
    };
    if (init.variant == PaddingVariant::Ternary) {
        fill("f_ins", ModKind::Insert);
        fill("f_del", ModKind::Delete);
    } else {
        fill_two_stage("f_ins", "s_ins", ModKind::Insert);
        fill_two_stage("f_del", "s_del", ModKind::Delete);
    }
}

PaddingCheckReport difftest_padding(const DynamicProgram& p, int sequences, int length,
                                    std::uint64_t seed) {
    if (p.initializer.kind != Initializer::Kind::Padding)
        throw Error("difftest_padding needs a padding-initialized program");
    const PaddingInit& init = p.initializer.padding;
    PaddingLayout layout{init.variant, init.n_plus};
    PaddingCheckReport report;
    std::mt19937_64 rng(seed);
    for (int seq = 0; seq < sequences; ++seq) {
        Structure db(p.input_schema, layout.domain_size());
        ProgramState state = init_state(p, db);
        ModSequence mods;
        for (int prefix = 0;; ++prefix) {
            std::uint64_t code = layout.code_of(state.structure);
            bool expected = init.truth_table[static_cast<std::size_t>(code)];
            bool got = state.query_bit(p);
            bool pointer_ok =
                state.structure.apply_function("p", {}) ==
                state.structure.domain()[static_cast<std::size_t>(layout.graph_element(code))];
            report.checks += 2;
            if (expected != got || !pointer_ok) {
                report.mismatches.push_back({seq, prefix, expected, got && pointer_ok, mods});
                break;
            }
            if (prefix == length) break;
            Modification m;
            m.kind = rng() % 2 == 0 ? ModKind::Insert : ModKind::Delete;
            m.relation = "E";
            // modifications touch the graph part of the domain only
            m.tuple = {state.structure.domain()[rng() % init.n_plus],
                       state.structure.domain()[rng() % init.n_plus]};
            mods.push_back(m);
            state = step(p, state, m);
        }
    }
    return report;
}

PaddingCheckReport difftest_padding(PaddingVariant variant, int n_plus, std::uint64_t oracle_seed,
                                    int sequences, int length, std::uint64_t seed) {
    PaddingLayout layout{variant, n_plus};
    std::mt19937_64 rng(oracle_seed);
    std::vector<bool> table(static_cast<std::size_t>(layout.num_graphs()));
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng() % 2 == 1;
    return difftest_padding(build_padding_program(variant, n_plus, std::move(table)), sequences,
                            length, seed);
}

}  // namespace dyncomp
