#include "dyncomp/compiler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dyncomp {

namespace {

// --- UCQ normalization ---

struct Proto {
    std::set<int> vars;  // binders on this disjunct's path (global indices)
    std::set<std::pair<int, int>> edges, eq, neq;
};

Proto merge(const Proto& a, const Proto& b) {
    Proto r = a;
    r.vars.insert(b.vars.begin(), b.vars.end());
    r.edges.insert(b.edges.begin(), b.edges.end());
    r.eq.insert(b.eq.begin(), b.eq.end());
    r.neq.insert(b.neq.begin(), b.neq.end());
    return r;
}

int var_index(const TermPtr& t, const std::map<std::string, int>& scope) {
    if (t->kind != Term::Kind::Variable)
        throw Error("atom arguments must be variables in a compilable sentence");
    auto it = scope.find(t->name);
    if (it == scope.end()) throw Error("free variable " + t->name + " in sentence");
    return it->second;
}

std::vector<Proto> normalize(const FormulaPtr& f, bool positive, std::map<std::string, int>& scope,
                             int& next) {
    switch (f->kind) {
        case Formula::Kind::Boolean:
            if (f->value == positive) return {Proto{}};  // neutral disjunct
            return {};                                   // drops the branch
        case Formula::Kind::RelAtom: {
            if (!positive) throw Error("negated relation atom: sentence is not semi-positive");
            if (f->name != "E" || f->terms.size() != 2)
                throw Error("only the binary relation E is compilable");
            Proto p;
            p.edges.insert({var_index(f->terms[0], scope), var_index(f->terms[1], scope)});
            return {p};
        }
        case Formula::Kind::Equal: {
            int a = var_index(f->terms[0], scope), b = var_index(f->terms[1], scope);
            if (a > b) std::swap(a, b);
            Proto p;
            if (positive) {
                if (a != b) p.eq.insert({a, b});
            } else {
                if (a == b) return {};  // x != x: branch drops
                p.neq.insert({a, b});
            }
            return {p};
        }
        case Formula::Kind::Not:
            return normalize(f->subs[0], !positive, scope, next);
        case Formula::Kind::Implies: {
            auto l = normalize(f->subs[0], !positive, scope, next);
            auto r = normalize(f->subs[1], positive, scope, next);
            if (positive) {  // disjunction
                l.insert(l.end(), r.begin(), r.end());
                return l;
            }
            std::vector<Proto> out;  // conjunction
            for (const auto& a : l)
                for (const auto& b : r) out.push_back(merge(a, b));
            return out;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            bool conj = (f->kind == Formula::Kind::And) == positive;
            std::vector<Proto> acc = conj ? std::vector<Proto>{Proto{}} : std::vector<Proto>{};
            for (const auto& sub : f->subs) {
                auto part = normalize(sub, positive, scope, next);
                if (conj) {
                    std::vector<Proto> out;
                    for (const auto& a : acc)
                        for (const auto& b : part) out.push_back(merge(a, b));
                    acc = std::move(out);
                } else {
                    acc.insert(acc.end(), part.begin(), part.end());
                }
            }
            return acc;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            bool existential = (f->kind == Formula::Kind::Exists) == positive;
            if (!existential) throw Error("universal quantifier: sentence is not existential");
            int idx = next++;
            auto saved = scope.find(f->name) == scope.end()
                             ? std::optional<int>{}
                             : std::optional<int>{scope[f->name]};
            scope[f->name] = idx;
            auto out = normalize(f->subs[0], positive, scope, next);
            if (saved)
                scope[f->name] = *saved;
            else
                scope.erase(f->name);
            for (auto& p : out) p.vars.insert(idx);
            return out;
        }
    }
    throw Error("unreachable formula kind");
}

}  // namespace

std::vector<ConjunctiveQuery> to_ucq_neq(const FormulaPtr& sentence) {
    std::map<std::string, int> scope;
    int next = 0;
    auto protos = normalize(sentence, true, scope, next);
    std::vector<ConjunctiveQuery> out;
    for (const auto& p : protos) {
        // compact the global indices used on this path to 0..k-1
        std::set<int> used = p.vars;
        for (const auto& [a, b] : p.edges) used.insert(a), used.insert(b);
        for (const auto& [a, b] : p.eq) used.insert(a), used.insert(b);
        for (const auto& [a, b] : p.neq) used.insert(a), used.insert(b);
        std::map<int, int> compact;
        for (int v : used) compact[v] = static_cast<int>(compact.size());
        ConjunctiveQuery cq;
        cq.var_count = static_cast<int>(compact.size());
        for (const auto& [a, b] : p.edges) cq.edges.insert({compact[a], compact[b]});
        for (const auto& [a, b] : p.eq) cq.eq.insert({compact[a], compact[b]});
        for (const auto& [a, b] : p.neq) cq.neq.insert({compact[a], compact[b]});
        out.push_back(std::move(cq));
    }
    return out;
}

SubgraphPattern pattern_of(const ConjunctiveQuery& cq) {
    if (!cq.eq.empty()) throw Error("pattern_of: disjunct still contains equalities");
    SubgraphPattern h;
    h.node_count = cq.var_count;
    h.edges = cq.edges;
    return h;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<SubgraphPattern> expand_equality_types(const ConjunctiveQuery& cq) {
    UnionFind uf(cq.var_count);
    for (const auto& [a, b] : cq.eq) uf.unite(a, b);
    for (const auto& [a, b] : cq.neq)
        if (uf.find(a) == uf.find(b)) return {};  // contradictory disjunct
    // equivalence classes in order of least member
    std::map<int, int> class_of;  // root -> class index
    std::vector<int> var_class(cq.var_count);
    for (int v = 0; v < cq.var_count; ++v) {
        int r = uf.find(v);
        if (!class_of.count(r)) {
            int idx = static_cast<int>(class_of.size());
            class_of[r] = idx;
        }
        var_class[v] = class_of[uf.find(v)];
    }
    int m = static_cast<int>(class_of.size());
    std::vector<SubgraphPattern> out;
    // restricted growth strings enumerate the set partitions of the classes
    std::vector<int> rgs(m, 0);
    auto emit = [&]() {
        for (const auto& [a, b] : cq.neq)
            if (rgs[var_class[a]] == rgs[var_class[b]]) return;
        SubgraphPattern h;
        h.node_count = 1 + *std::max_element(rgs.begin(), rgs.end());
        if (m == 0) h.node_count = 0;
        for (const auto& [a, b] : cq.edges) h.edges.insert({rgs[var_class[a]], rgs[var_class[b]]});
        out.push_back(std::move(h));
    };
    if (m == 0) {
        emit();
        return out;
    }
    // iterate RGS: rgs[i] <= 1 + max(rgs[0..i-1])
    while (true) {
        emit();
        int i = m - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

namespace {

// --- pattern compilation ---

std::string subset_name(const std::string& prefix, const std::vector<int>& s) {
    if (s.empty()) return prefix + "Q";
    std::string name = prefix + "R";
    for (int v : s) name += "_" + std::to_string(v);
    return name;
}

TermPtr yvar(int i) { return var("y" + std::to_string(i + 1)); }

bool is_var(const TermPtr& t, const std::string& name) {
    return t->kind == Term::Kind::Variable && t->name == name;
}

/// "edge (s,t) present after inserting (u,v)": E(s,t) or (s,t) = (u,v),
/// with syntactically trivial equalities dropped.
FormulaPtr present(const TermPtr& s, const TermPtr& t) {
    std::vector<FormulaPtr> eqs;
    if (!is_var(s, "u")) eqs.push_back(eq(s, var("u")));
    if (!is_var(t, "v")) eqs.push_back(eq(t, var("v")));
    if (eqs.empty()) return truth(true);  // the inserted edge itself
    return lor({rel("E", {s, t}), land(std::move(eqs))});
}

void push_unless_true(std::vector<FormulaPtr>& fs, FormulaPtr f) {
    if (!(f->kind == Formula::Kind::Boolean && f->value)) fs.push_back(std::move(f));
}

/// New-witness disjunction for subset S of the pattern's nodes: some node
/// outside S maps onto u, onto v, or one onto each, and every pattern edge
/// newly pulled inside the tuple is present once (u,v) is inserted.
FormulaPtr phi_new(const SubgraphPattern& h, const std::vector<int>& s,
                   const std::string& prefix) {
    std::set<int> in_s(s.begin(), s.end());
    std::map<int, int> y_pos;  // pattern node -> index into s
    for (std::size_t i = 0; i < s.size(); ++i) y_pos[s[i]] = static_cast<int>(i);

    auto guard_and_edges = [&](const std::map<int, TermPtr>& moved) -> FormulaPtr {
        std::vector<int> sprime = s;
        for (const auto& [w, t] : moved) sprime.push_back(w);
        std::sort(sprime.begin(), sprime.end());
        auto term_of = [&](int node) -> TermPtr {
            auto it = moved.find(node);
            return it != moved.end() ? it->second : yvar(y_pos.at(node));
        };
        std::vector<FormulaPtr> conj;
        for (const auto& [w, t] : moved)
            for (std::size_t i = 0; i < s.size(); ++i) conj.push_back(neq(t, yvar(i)));
        if (moved.size() == 2) conj.push_back(neq(var("u"), var("v")));
        if (static_cast<int>(sprime.size()) < h.node_count) {
            std::vector<TermPtr> args;
            for (int node : sprime) args.push_back(term_of(node));
            conj.push_back(rel(subset_name(prefix, sprime), std::move(args)));
        }
        std::set<int> in_sprime(sprime.begin(), sprime.end());
        for (const auto& [a, b] : h.edges) {
            if (!moved.count(a) && !moved.count(b)) continue;  // already inside S or outside S'
            if (!in_sprime.count(a) || !in_sprime.count(b)) continue;  // still outside S'
            push_unless_true(conj, present(term_of(a), term_of(b)));
        }
        return land(std::move(conj));
    };

    std::vector<FormulaPtr> cases;
    for (int w = 0; w < h.node_count; ++w) {
        if (in_s.count(w)) continue;
        cases.push_back(guard_and_edges({{w, var("u")}}));
        cases.push_back(guard_and_edges({{w, var("v")}}));
    }
    for (int wa = 0; wa < h.node_count; ++wa) {
        if (in_s.count(wa)) continue;
        for (int wb = 0; wb < h.node_count; ++wb) {
            if (wb == wa || in_s.count(wb)) continue;
            cases.push_back(guard_and_edges({{wa, var("u")}, {wb, var("v")}}));
        }
    }
    return lor(std::move(cases));
}

UpdateRule subset_rule(const SubgraphPattern& h, const std::vector<int>& s,
                       const std::string& prefix) {
    UpdateRule rule;
    rule.mod_vars = {"u", "v"};
    for (std::size_t i = 0; i < s.size(); ++i) rule.tuple_vars.push_back("y" + std::to_string(i + 1));
    std::vector<TermPtr> yvars;
    for (std::size_t i = 0; i < s.size(); ++i) yvars.push_back(yvar(i));
    std::vector<FormulaPtr> conj;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) conj.push_back(neq(yvars[i], yvars[j]));
    conj.push_back(lor({rel(subset_name(prefix, s), yvars), phi_new(h, s, prefix)}));
    rule.formula = land(std::move(conj));
    return rule;
}

std::vector<std::vector<int>> proper_subsets(int k) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (mask == (1u << k) - 1 && k > 0) continue;  // |z̄| >= 1
        std::vector<int> s;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

DynamicProgram compile_pattern(const SubgraphPattern& h, const std::string& prefix) {
    if (h.node_count < 0 || h.node_count > 10) throw Error("pattern size out of range");
    for (const auto& [a, b] : h.edges)
        if (a < 0 || a >= h.node_count || b < 0 || b >= h.node_count)
            throw Error("pattern edge endpoint out of range");
    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.supports_insert = true;
    p.supports_delete = false;
    p.query_symbol = prefix + "Q";
    for (const auto& s : proper_subsets(h.node_count)) {
        p.aux_schema.add_relation(subset_name(prefix, s), static_cast<int>(s.size()));
        p.rules[{subset_name(prefix, s), ModKind::Insert, "E"}] = subset_rule(h, s, prefix);
        p.initializer.entries.push_back({subset_name(prefix, s), h, s});
    }
    p.initializer.kind = Initializer::Kind::SubgraphExtends;
    p.validate();
    return p;
}

DynamicProgram compile_semipositive(const FormulaPtr& sentence) {
    std::set<SubgraphPattern> seen;
    std::vector<SubgraphPattern> patterns;
    for (const auto& cq : to_ucq_neq(sentence))
        for (auto& h : expand_equality_types(cq))
            if (seen.insert(h).second) patterns.push_back(h);

    DynamicProgram p;
    p.input_schema.add_relation("E", 2);
    p.supports_insert = true;
    p.supports_delete = false;
    p.query_symbol = "Q";
    p.initializer.kind = Initializer::Kind::SubgraphExtends;
    p.aux_schema.add_relation("Q", 0);
    std::vector<FormulaPtr> q_bodies{rel("Q", {})};
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& h = patterns[i];
        std::string prefix = "p" + std::to_string(i) + "_";
        for (const auto& s : proper_subsets(h.node_count)) {
            if (s.empty()) {
                // the component query bit is inlined into the global Q rule
                q_bodies.push_back(phi_new(h, {}, prefix));
                p.initializer.entries.push_back({"Q", h, {}});
                continue;
            }
            p.aux_schema.add_relation(subset_name(prefix, s), static_cast<int>(s.size()));
            p.rules[{subset_name(prefix, s), ModKind::Insert, "E"}] = subset_rule(h, s, prefix);
            p.initializer.entries.push_back({subset_name(prefix, s), h, s});
        }
    }
    UpdateRule q_rule;
    q_rule.mod_vars = {"u", "v"};
    q_rule.formula = lor(std::move(q_bodies));
    p.rules[{"Q", ModKind::Insert, "E"}] = q_rule;
    p.validate();
    return p;
}

}  // namespace dyncomp
