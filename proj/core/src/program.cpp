#include "dyncomp/program.hpp"

#include <algorithm>
#include <random>

#include "dyncomp/padding.hpp"

namespace dyncomp {

int DynamicProgram::arity() const {
    int r = 0;
    for (const auto& [name, ar] : aux_schema.relations()) r = std::max(r, ar);
    return r;
}

bool DynamicProgram::is_dynprop() const {
    if (!aux_schema.functions().empty() || !aux_schema.constants().empty()) return false;
    for (const auto& [key, rule] : rules)
        if (!rule.formula || !quantifier_free(rule.formula)) return false;
    return true;
}

Schema DynamicProgram::combined_schema() const { return Schema::merge(input_schema, aux_schema); }

namespace {

void check_scope(const std::set<std::string>& free, const UpdateRule& rule,
                 const std::string& where) {
    std::set<std::string> bound(rule.mod_vars.begin(), rule.mod_vars.end());
    bound.insert(rule.tuple_vars.begin(), rule.tuple_vars.end());
    if (bound.size() != rule.mod_vars.size() + rule.tuple_vars.size())
        throw Error(where + ": rule variables repeat");
    for (const auto& v : free)
        if (!bound.count(v)) throw Error(where + ": unbound variable " + v);
}

}  // namespace

void DynamicProgram::validate() const {
    if (!aux_schema.has_relation(query_symbol))
        throw Error("query symbol must be an auxiliary relation");
    for (const auto& [key, rule] : rules) {
        std::string where = "rule for " + key.aux_symbol + " on " +
                            (key.kind == ModKind::Insert ? "ins " : "del ") + key.input_relation;
        if (!input_schema.has_relation(key.input_relation))
            throw Error(where + ": unknown input relation");
        bool is_rel = aux_schema.has_relation(key.aux_symbol);
        bool is_fn = aux_schema.has_function(key.aux_symbol);
        if (!is_rel && !is_fn) throw Error(where + ": unknown auxiliary symbol");
        int in_ar = input_schema.relation_arity(key.input_relation);
        if (static_cast<int>(rule.mod_vars.size()) != in_ar)
            throw Error(where + ": modified-tuple variable count mismatch");
        int ar = is_rel ? aux_schema.relation_arity(key.aux_symbol)
                        : aux_schema.function_arity(key.aux_symbol);
        if (static_cast<int>(rule.tuple_vars.size()) != ar)
            throw Error(where + ": updated-tuple variable count mismatch");
        if (is_rel) {
            if (!rule.formula || rule.term) throw Error(where + ": relation rules take a formula");
            if (!quantifier_free(rule.formula)) throw Error(where + ": rule is not quantifier-free");
            check_scope(free_variables(rule.formula), rule, where);
        } else {
            if (!rule.term || rule.formula) throw Error(where + ": function rules take a term");
            if (!quantifier_free(rule.term)) throw Error(where + ": rule is not quantifier-free");
            check_scope(free_variables(rule.term), rule, where);
        }
    }
}

bool ProgramState::query_bit(const DynamicProgram& p) const {
    return structure.holds(p.query_symbol, {});
}

namespace {

bool adjacent(const Structure& g, ElementId a, ElementId b) {
    return g.holds("E", {a, b}) || g.holds("E", {b, a});
}

void init_three_clique(Structure& state) {
    const auto& dom = state.domain();
    std::set<std::vector<ElementId>> r;
    for (ElementId x : dom)
        for (ElementId y : dom) {
            if (x == y) continue;
            for (ElementId z : dom)
                if (z != x && z != y && adjacent(state, z, x) && adjacent(state, z, y)) {
                    r.insert({x, y});
                    break;
                }
        }
    state.set_relation("R", std::move(r));
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = i + 1; j < dom.size(); ++j)
            for (std::size_t k = j + 1; k < dom.size(); ++k)
                if (adjacent(state, dom[i], dom[j]) && adjacent(state, dom[i], dom[k]) &&
                    adjacent(state, dom[j], dom[k])) {
                    state.add_tuple("Q", {});
                    return;
                }
}

void init_subgraph_extends(const DynamicProgram& p, Structure& state, const Structure& input) {
    for (const auto& [name, ar] : p.aux_schema.relations()) {
        std::vector<const SubgraphInitEntry*> entries;
        for (const auto& e : p.initializer.entries)
            if (e.relation == name) {
                if (static_cast<int>(e.y_nodes.size()) != ar)
                    throw Error("initializer entry arity mismatch for " + name);
                entries.push_back(&e);
            }
        if (entries.empty()) continue;
        std::set<std::vector<ElementId>> content;
        for (const auto& tuple : state.all_tuples(ar)) {
            std::set<ElementId> distinct(tuple.begin(), tuple.end());
            if (distinct.size() != tuple.size()) continue;
            for (const auto* e : entries) {
                Partition part;
                part.y = e->y_nodes;
                std::set<int> ys(e->y_nodes.begin(), e->y_nodes.end());
                for (int v = 0; v < e->pattern.node_count; ++v)
                    if (!ys.count(v)) part.z.push_back(v);
                if (extends_to(input, tuple, e->pattern, part)) {
                    content.insert(tuple);
                    break;
                }
            }
        }
        state.set_relation(name, std::move(content));
    }
}

void init_max_outdegree(Structure& state) {
    const auto& dom = state.domain();
    auto n = dom.size();
    auto clamp = [&](std::size_t v) { return dom[std::min(v, n - 1)]; };
    auto& succ = state.function("succ");
    auto& pred = state.function("pred");
    succ.def = pred.def = dom[0];
    for (std::size_t i = 0; i < n; ++i) {
        succ.set({dom[i]}, clamp(i + 1));
        pred.set({dom[i]}, dom[i == 0 ? 0 : i - 1]);
    }
    std::map<ElementId, std::size_t> outdeg;
    for (ElementId a : dom) outdeg[a] = 0;
    for (const auto& t : state.relation("E")) ++outdeg[t[0]];
    std::size_t maxdeg = 0;
    for (const auto& [a, d] : outdeg) maxdeg = std::max(maxdeg, d);
    std::vector<std::size_t> count(n, 0);
    auto& num_edges = state.function("numEdges");
    num_edges.def = dom[0];
    for (ElementId a : dom) {
        num_edges.set({a}, clamp(outdeg[a]));
        ++count[std::min(outdeg[a], n - 1)];
    }
    auto& num_nodes = state.function("numNodes");
    num_nodes.def = dom[0];
    for (std::size_t i = 0; i < n; ++i) num_nodes.set({dom[i]}, clamp(count[i]));
    state.function("zero").def = dom[0];
    state.function("one").def = clamp(1);
    state.function("maxdeg").def = clamp(maxdeg);
    std::set<std::vector<ElementId>> q;
    for (ElementId a : dom)
        if (outdeg[a] == maxdeg) q.insert({a});
    state.set_relation("Q", std::move(q));
}

}  // namespace

ProgramState init_state(const DynamicProgram& p, const Structure& input) {
    if (input.schema() != p.input_schema) throw Error("init_state: input schema mismatch");
    std::vector<Element> elements;
    for (ElementId e : input.domain()) elements.push_back({e, input.label(e)});
    Structure state(p.combined_schema(), elements);
    for (const auto& [name, ar] : p.input_schema.relations())
        state.set_relation(name, input.relation(name));
    for (const auto& name : p.input_schema.constants())
        state.set_constant(name, input.constant(name));
    for (const auto& [name, ar] : p.input_schema.functions())
        state.function(name) = input.function(name);
    // default every auxiliary function/constant to the least element
    ElementId least = state.domain().front();
    for (const auto& [name, ar] : p.aux_schema.functions()) state.function(name).def = least;
    for (const auto& name : p.aux_schema.constants()) state.set_constant(name, least);

    switch (p.initializer.kind) {
        case Initializer::Kind::Empty:
            break;
        case Initializer::Kind::ThreeClique:
            init_three_clique(state);
            break;
        case Initializer::Kind::SubgraphExtends:
            init_subgraph_extends(p, state, input);
            break;
        case Initializer::Kind::MaxOutdegree:
            init_max_outdegree(state);
            break;
        case Initializer::Kind::Padding:
            init_padding_aux(p.initializer.padding, state);
            break;
    }
    return ProgramState{std::move(state)};
}

namespace {

/// Rules of the shape R(ȳ) := R(ȳ) or f(ȳ) := f(ȳ) are skipped wholesale;
/// padded domains make pointwise re-evaluation of them infeasible.
bool is_identity_rule(const RuleKey& key, const UpdateRule& rule) {
    if (rule.formula) {
        const Formula& f = *rule.formula;
        if (f.kind != Formula::Kind::RelAtom || f.name != key.aux_symbol) return false;
        for (std::size_t i = 0; i < rule.tuple_vars.size(); ++i)
            if (f.terms[i]->kind != Term::Kind::Variable || f.terms[i]->name != rule.tuple_vars[i])
                return false;
        return true;
    }
    const Term& t = *rule.term;
    if (t.kind != Term::Kind::Apply || t.name != key.aux_symbol) return false;
    for (std::size_t i = 0; i < rule.tuple_vars.size(); ++i)
        if (t.args[i]->kind != Term::Kind::Variable || t.args[i]->name != rule.tuple_vars[i])
            return false;
    return true;
}

}  // namespace

ProgramState step(const DynamicProgram& p, const ProgramState& s, const Modification& m) {
    if (!p.supports(m.kind))
        throw Error(std::string("program does not support ") +
                    (m.kind == ModKind::Insert ? "insertions" : "deletions"));
    if (!p.input_schema.has_relation(m.relation))
        throw Error("modification targets unknown relation " + m.relation);
    if (static_cast<int>(m.tuple.size()) != p.input_schema.relation_arity(m.relation))
        throw Error("modification tuple arity mismatch for " + m.relation);
    const Structure& old = s.structure;
    Structure next = old;
    for (const auto& [key, rule] : p.rules) {
        if (key.kind != m.kind || key.input_relation != m.relation) continue;
        if (is_identity_rule(key, rule)) continue;
        Assignment base;
        for (std::size_t i = 0; i < rule.mod_vars.size(); ++i) base[rule.mod_vars[i]] = m.tuple[i];
        int ar = static_cast<int>(rule.tuple_vars.size());
        if (rule.formula) {
            std::set<std::vector<ElementId>> content;
            for (const auto& tuple : old.all_tuples(ar)) {
                Assignment a = base;
                for (int i = 0; i < ar; ++i) a[rule.tuple_vars[i]] = tuple[i];
                if (eval_formula(old, rule.formula, a)) content.insert(tuple);
            }
            next.set_relation(key.aux_symbol, std::move(content));
        } else {
            FunctionInterp fi;
            fi.def = old.domain().front();
            for (const auto& tuple : old.all_tuples(ar)) {
                Assignment a = base;
                for (int i = 0; i < ar; ++i) a[rule.tuple_vars[i]] = tuple[i];
                fi.set(tuple, eval_term(old, rule.term, a));
            }
            if (ar == 0) fi = FunctionInterp{fi.value({}), {}};
            next.function(key.aux_symbol) = std::move(fi);
        }
    }
    Modification applied = m;
    if (m.kind == ModKind::Insert)
        next.add_tuple(m.relation, m.tuple);
    else
        next.remove_tuple(m.relation, m.tuple);
    return ProgramState{std::move(next)};
}

ProgramState run(const DynamicProgram& p, const ProgramState& s, const ModSequence& ms) {
    ProgramState cur = s;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        try {
            cur = step(p, cur, ms[i]);
        } catch (const Error& e) {
            throw Error("modification " + std::to_string(i) + ": " + e.what());
        }
    }
    return cur;
}

Structure input_part(const DynamicProgram& p, const ProgramState& s) {
    std::vector<Element> elements;
    for (ElementId e : s.structure.domain()) elements.push_back({e, s.structure.label(e)});
    Structure db(p.input_schema, elements);
    for (const auto& [name, ar] : p.input_schema.relations())
        db.set_relation(name, s.structure.relation(name));
    for (const auto& name : p.input_schema.constants())
        db.set_constant(name, s.structure.constant(name));
    for (const auto& [name, ar] : p.input_schema.functions())
        db.function(name) = s.structure.function(name);
    return db;
}

DifftestReport difftest(const DynamicProgram& p, const FormulaPtr& sentence,
                        const DifftestParams& params) {
    if (!p.input_schema.constants().empty() || !p.input_schema.functions().empty())
        throw Error("difftest requires a purely relational input schema");
    if (!free_variables(sentence).empty()) throw Error("difftest requires a sentence");
    std::vector<std::pair<std::string, int>> rels(p.input_schema.relations().begin(),
                                                  p.input_schema.relations().end());
    if (rels.empty()) throw Error("difftest requires an input relation");

    DifftestReport report;
    report.params = params;
    std::mt19937_64 rng(params.seed);
    auto pick = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
    for (int seq = 0; seq < params.sequences; ++seq) {
        Structure db(p.input_schema, static_cast<std::size_t>(params.domain_size));
        ProgramState state = init_state(p, db);
        ModSequence mods;
        for (int prefix = 0;; ++prefix) {
            bool expected = static_eval(db, sentence);
            bool got = state.query_bit(p);
            ++report.checks;
            if (expected != got) {
                report.mismatches.push_back({seq, prefix, expected, got, mods});
                break;
            }
            if (prefix == params.length) break;
            Modification m;
            m.kind = !p.supports_delete                 ? ModKind::Insert
                     : !p.supports_insert               ? ModKind::Delete
                     : (rng() % 2 == 0 ? ModKind::Insert : ModKind::Delete);
            const auto& [rname, rar] = rels[pick(rels.size())];
            m.relation = rname;
            do {
                m.tuple.clear();
                for (int i = 0; i < rar; ++i)
                    m.tuple.push_back(db.domain()[pick(db.size())]);
            } while (!params.allow_loops && rar == 2 && m.tuple[0] == m.tuple[1]);
            mods.push_back(m);
            db = apply_modification(db, m);
            state = step(p, state, m);
        }
    }
    return report;
}

}  // namespace dyncomp
