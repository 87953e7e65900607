#include "dyncomp/ramsey.hpp"

#include <algorithm>
#include <random>

namespace dyncomp {

boost::multiprecision::cpp_int tower(int k, int n) {
    if (k < 1 || n < 0) throw Error("tower: k >= 1 and n >= 0 required");
    boost::multiprecision::cpp_int t = n;
    for (int i = 1; i < k; ++i) {
        if (t > 10'000'000) throw Error("tower: result exceeds the representable range");
        t = boost::multiprecision::cpp_int(1) << static_cast<unsigned>(t);
    }
    return t;
}

namespace {

std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

std::vector<std::vector<int>> HyperedgeColoring::subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::size_t HyperedgeColoring::rank(int n, const std::vector<int>& subset) {
    std::size_t r = 0;
    int prev = -1;
    int k = static_cast<int>(subset.size());
    for (int i = 0; i < k; ++i) {
        for (int j = prev + 1; j < subset[i]; ++j) r += binom(n - 1 - j, k - 1 - i);
        prev = subset[i];
    }
    return r;
}

std::pair<HyperedgeColoring, std::vector<std::string>> color_by_type(const Structure& s, int k) {
    int n = static_cast<int>(s.size());
    if (k < 0 || k > n) throw Error("color_by_type: dimension out of range");
    HyperedgeColoring c;
    c.n = n;
    c.k = k;
    std::map<std::string, int> by_key;
    std::vector<std::string> keys;
    for (const auto& subset : HyperedgeColoring::subsets(n, k)) {
        std::vector<ElementId> tuple;
        for (int v : subset) tuple.push_back(s.domain()[v]);
        std::string key = atomic_type(s, tuple).key();
        auto [it, fresh] = by_key.insert({key, static_cast<int>(by_key.size())});
        if (fresh) keys.push_back(key);
        c.colors.push_back(it->second);
    }
    c.num_colors = std::max<int>(1, static_cast<int>(by_key.size()));
    return {std::move(c), std::move(keys)};
}

namespace {

bool clique_search(const HyperedgeColoring& c, int size, int start, int color,
                   std::vector<int>& chosen) {
    if (static_cast<int>(chosen.size()) == size) return true;
    for (int v = start; v < c.n; ++v) {
        chosen.push_back(v);
        int col = color;
        bool ok = true;
        if (static_cast<int>(chosen.size()) >= c.k && c.k >= 1) {
            // every new k-subset (those containing v) must match the color
            std::vector<int> rest(chosen.begin(), chosen.end() - 1);
            for (const auto& sub : HyperedgeColoring::subsets(static_cast<int>(rest.size()),
                                                              c.k - 1)) {
                std::vector<int> edge;
                for (int i : sub) edge.push_back(rest[i]);
                edge.push_back(v);
                int col_e = c.color(edge);
                if (col == -1)
                    col = col_e;
                else if (col != col_e) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && clique_search(c, size, v + 1, col, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_monochromatic_clique(const HyperedgeColoring& c, int size) {
    if (size < 0 || size > c.n) return std::nullopt;
    std::vector<int> chosen;
    if (clique_search(c, size, 0, -1, chosen)) return chosen;
    return std::nullopt;
}

std::optional<std::vector<ElementId>> ordered_tau_clique(const Structure& s, int target) {
    int k = s.schema().max_relation_arity();
    if (target > static_cast<int>(s.size())) return std::nullopt;
    auto [coloring, keys] = color_by_type(s, k);
    auto clique = find_monochromatic_clique(coloring, target);
    if (!clique) return std::nullopt;
    std::vector<ElementId> out;
    for (int v : *clique) out.push_back(s.domain()[v]);
    // post-hoc: every ascending k-tuple over the result has one type
    std::optional<std::string> key;
    for (const auto& sub : HyperedgeColoring::subsets(static_cast<int>(out.size()), k)) {
        std::vector<ElementId> tuple;
        for (int i : sub) tuple.push_back(out[i]);
        std::string t = atomic_type(s, tuple).key();
        if (!key)
            key = t;
        else if (*key != t)
            throw Error("ordered_tau_clique: verification failed");
    }
    return out;
}

std::optional<HyperedgeColoring> search_antiramsey_coloring(int n, int k, int size,
                                                            std::uint64_t seed, int budget) {
    std::mt19937_64 rng(seed);
    std::size_t edges = binom(n, k);
    for (int trial = 0; trial < budget; ++trial) {
        HyperedgeColoring c;
        c.n = n;
        c.k = k;
        c.num_colors = 2;
        for (std::size_t i = 0; i < edges; ++i) c.colors.push_back(static_cast<int>(rng() % 2));
        if (!find_monochromatic_clique(c, size)) return c;
    }
    return std::nullopt;
}

LowerBoundInstance build_lowerbound_instance(const std::vector<std::string>& a_labels,
                                             const std::set<std::set<int>>& b, int k,
                                             LowerBoundVariant variant) {
    if (k < 1) throw Error("lower-bound instance: k >= 1 required");
    int n = static_cast<int>(a_labels.size());
    Schema schema;
    schema.add_relation("E", 2);
    if (variant == LowerBoundVariant::Eafo) {
        schema.add_constant("s");
        schema.add_constant("t");
    }
    std::vector<std::string> labels = a_labels;
    std::vector<std::set<int>> all_subsets;
    for (const auto& sub : HyperedgeColoring::subsets(n, k + 1)) {
        all_subsets.emplace_back(sub.begin(), sub.end());
        std::string name = "c";
        for (int i : sub) name += "_" + a_labels[i];
        labels.push_back(name);
    }
    if (variant == LowerBoundVariant::Eafo) {
        labels.push_back("s");
        labels.push_back("t");
    }
    LowerBoundInstance inst;
    inst.k = k;
    inst.variant = variant;
    inst.structure = Structure(schema, labels);
    const auto& dom = inst.structure.domain();
    for (int i = 0; i < n; ++i) inst.a.push_back(dom[i]);
    for (std::size_t i = 0; i < all_subsets.size(); ++i) inst.c[all_subsets[i]] = dom[n + i];
    for (const auto& sub : b) {
        if (!inst.c.count(sub)) throw Error("lower-bound instance: B contains an invalid subset");
        inst.b.insert(sub);
        for (int i : sub) inst.structure.add_tuple("E", {inst.c[sub], dom[i]});
    }
    for (const auto& sub : all_subsets)
        if (!inst.b.count(sub)) inst.b_prime.insert(sub);
    if (variant == LowerBoundVariant::Eafo) {
        ElementId se = inst.structure.element("s");
        ElementId te = inst.structure.element("t");
        inst.structure.set_constant("s", se);
        inst.structure.set_constant("t", te);
        for (const auto& sub : inst.b) inst.structure.add_tuple("E", {se, inst.c[sub]});
    }
    return inst;
}

ModSequence completion_sequence(const LowerBoundInstance& inst, const std::set<int>& subset) {
    std::vector<int> m(subset.begin(), subset.end());
    ModSequence out;
    if (inst.variant == LowerBoundVariant::Clique) {
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j)
                out.push_back({ModKind::Insert, "E", {inst.a[m[i]], inst.a[m[j]]}});
    } else {
        ElementId t = inst.structure.constant("t");
        for (int i : m) out.push_back({ModKind::Insert, "E", {inst.a[i], t}});
    }
    return out;
}

FormulaPtr eafo_sentence() {
    return exists("x", forall("y", land({rel("E", {cst("s"), var("x")}),
                                         implies(rel("E", {var("y"), cst("t")}),
                                                 rel("E", {var("x"), var("y")}))})));
}

namespace {

LemmaVerdict violated(const std::string& detail) { return {false, detail}; }

/// Relations of both structures agree on tuples over `a` mapped via pi; the
/// constants lying inside `a` must correspond as well.
std::optional<std::string> iso_mismatch(const Structure& s, const Structure& t,
                                        const std::vector<ElementId>& a,
                                        const std::map<ElementId, ElementId>& pi) {
    for (const auto& [name, ar] : s.schema().relations()) {
        std::vector<std::vector<ElementId>> tuples{{}};
        for (int i = 0; i < ar; ++i) {
            std::vector<std::vector<ElementId>> next;
            for (const auto& tup : tuples)
                for (ElementId e : a) {
                    auto ext = tup;
                    ext.push_back(e);
                    next.push_back(std::move(ext));
                }
            tuples = std::move(next);
        }
        for (const auto& tup : tuples) {
            std::vector<ElementId> img;
            for (ElementId e : tup) img.push_back(pi.at(e));
            if (s.holds(name, tup) != t.holds(name, img))
                return "relation " + name + " disagrees on a restricted tuple";
        }
    }
    std::set<ElementId> in_a(a.begin(), a.end());
    for (const auto& name : s.schema().constants()) {
        bool sa = in_a.count(s.constant(name)) != 0;
        bool tb = std::any_of(a.begin(), a.end(),
                              [&](ElementId e) { return pi.at(e) == t.constant(name); });
        if (sa != tb) return "constant " + name + " crosses the substructure boundary";
        if (sa && pi.at(s.constant(name)) != t.constant(name))
            return "constant " + name + " is not respected";
    }
    return std::nullopt;
}

std::optional<std::string> respecting_mismatch(const ModSequence& alpha, const ModSequence& beta,
                                               const std::set<ElementId>& domain,
                                               const std::map<ElementId, ElementId>& pi) {
    if (alpha.size() != beta.size()) return std::string("sequence lengths differ");
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i].kind != beta[i].kind || alpha[i].relation != beta[i].relation)
            return std::string("modification kinds or relations differ at step ") +
                   std::to_string(i);
        if (alpha[i].tuple.size() != beta[i].tuple.size())
            return std::string("modification arities differ at step ") + std::to_string(i);
        for (std::size_t j = 0; j < alpha[i].tuple.size(); ++j) {
            if (!domain.count(alpha[i].tuple[j]))
                return std::string("modification leaves the mapped set at step ") +
                       std::to_string(i);
            if (pi.at(alpha[i].tuple[j]) != beta[i].tuple[j])
                return std::string("tuples are not related by pi at step ") + std::to_string(i);
        }
    }
    return std::nullopt;
}

}  // namespace

LemmaVerdict check_substructure_lemma(const DynamicProgram& p, const ProgramState& s,
                                      const ProgramState& t, const std::vector<ElementId>& a,
                                      const std::vector<ElementId>& b,
                                      const std::map<ElementId, ElementId>& pi,
                                      const ModSequence& alpha, const ModSequence& beta) {
    if (!p.is_dynprop()) return violated("precondition: program has auxiliary functions");
    if (a.size() != b.size() || pi.size() != a.size())
        return violated("precondition: pi is not a bijection between the subsets");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!pi.count(a[i]) || pi.at(a[i]) != b[i])
            return violated("precondition: pi does not map the subsets index-wise");
    if (auto why = iso_mismatch(s.structure, t.structure, a, pi))
        return violated("precondition: initial states not isomorphic on the subsets: " + *why);
    std::set<ElementId> in_a(a.begin(), a.end());
    if (auto why = respecting_mismatch(alpha, beta, in_a, pi))
        return violated("precondition: sequences not pi-respecting: " + *why);
    ProgramState sa = run(p, s, alpha);
    ProgramState tb = run(p, t, beta);
    if (auto why = iso_mismatch(sa.structure, tb.structure, a, pi))
        return violated("final states differ on the restricted part: " + *why);
    return {true, ""};
}

std::set<ElementId> neighborhood(const Structure& s, const std::set<ElementId>& a, int m) {
    std::vector<std::string> vars;
    Assignment assign;
    int i = 0;
    for (ElementId e : a) {
        std::string v = "v" + std::to_string(++i);
        vars.push_back(v);
        assign[v] = e;
    }
    std::set<ElementId> out;
    for (const auto& t : enumerate_terms(s.schema(), vars, m)) out.insert(eval_term(s, t, assign));
    return out;
}

std::optional<std::map<ElementId, ElementId>> m_similar(const Structure& s, const Structure& t,
                                                        const std::vector<ElementId>& a,
                                                        const std::vector<ElementId>& b, int m) {
    if (s.schema() != t.schema()) throw Error("m_similar: schema mismatch");
    if (a.size() != b.size()) throw Error("m_similar: tuple arities differ");
    std::vector<std::string> vars;
    Assignment assign_a, assign_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string v = "x" + std::to_string(i + 1);
        vars.push_back(v);
        assign_a[v] = a[i];
        assign_b[v] = b[i];
    }
    std::map<ElementId, ElementId> pi, inverse;
    for (const auto& term : enumerate_terms(s.schema(), vars, m)) {
        ElementId va = eval_term(s, term, assign_a);
        ElementId vb = eval_term(t, term, assign_b);
        auto [it, fresh] = pi.insert({va, vb});
        if (!fresh && it->second != vb) return std::nullopt;  // not well defined
        auto [jt, fresh2] = inverse.insert({vb, va});
        if (!fresh2 && jt->second != va) return std::nullopt;  // not injective
    }
    // relation preservation on the neighborhoods
    std::vector<ElementId> na;
    for (const auto& [va, vb] : pi) na.push_back(va);
    for (const auto& [name, ar] : s.schema().relations()) {
        std::vector<std::vector<ElementId>> tuples{{}};
        for (int i = 0; i < ar; ++i) {
            std::vector<std::vector<ElementId>> next;
            for (const auto& tup : tuples)
                for (ElementId e : na) {
                    auto ext = tup;
                    ext.push_back(e);
                    next.push_back(std::move(ext));
                }
            tuples = std::move(next);
        }
        for (const auto& tup : tuples) {
            std::vector<ElementId> img;
            for (ElementId e : tup) img.push_back(pi.at(e));
            if (s.holds(name, tup) != t.holds(name, img)) return std::nullopt;
        }
    }
    return pi;
}

std::optional<std::vector<ElementId>> find_similar_tuples(const Structure& s, int m, int target) {
    for (const auto& [name, ar] : s.schema().functions())
        if (ar > 1) throw Error("find_similar_tuples: functions must be unary");
    int k = s.schema().max_relation_arity();
    if (target > static_cast<int>(s.size())) return std::nullopt;
    if (k == 0) {
        std::vector<ElementId> out(s.domain().begin(), s.domain().begin() + target);
        return out;
    }
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back("x" + std::to_string(i + 1));
    auto terms = enumerate_terms(s.schema(), vars, m);

    // group the ascending k-tuples by the atomic type of their term-value
    // vector, then search an ordered-type clique of the derived structure
    std::map<std::string, int> type_index;
    std::map<std::vector<int>, int> tuple_type;
    for (const auto& sub : HyperedgeColoring::subsets(static_cast<int>(s.size()), k)) {
        Assignment assign;
        for (int i = 0; i < k; ++i) assign[vars[i]] = s.domain()[sub[i]];
        std::vector<ElementId> vec;
        for (const auto& t : terms) vec.push_back(eval_term(s, t, assign));
        std::string key = atomic_type(s, vec).key();
        auto [it, fresh] = type_index.insert({key, static_cast<int>(type_index.size())});
        tuple_type[sub] = it->second;
    }
    Schema derived_schema;
    for (int i = 0; i < static_cast<int>(type_index.size()); ++i)
        derived_schema.add_relation("T" + std::to_string(i), k);
    std::vector<Element> elements;
    for (ElementId e : s.domain()) elements.push_back({e, s.label(e)});
    Structure derived(derived_schema, elements);
    for (const auto& [sub, type] : tuple_type) {
        std::vector<ElementId> tuple;
        for (int v : sub) tuple.push_back(s.domain()[v]);
        derived.add_tuple("T" + std::to_string(type), tuple);
    }
    auto clique = ordered_tau_clique(derived, target);
    if (!clique) return std::nullopt;
    // post-hoc: all ascending k-tuples over the subset pairwise m-similar
    auto k_tuples = HyperedgeColoring::subsets(static_cast<int>(clique->size()), k);
    for (const auto& sa : k_tuples)
        for (const auto& sb : k_tuples) {
            std::vector<ElementId> ta, tb;
            for (int v : sa) ta.push_back((*clique)[v]);
            for (int v : sb) tb.push_back((*clique)[v]);
            if (!m_similar(s, s, ta, tb, m))
                throw Error("find_similar_tuples: verification failed");
        }
    return clique;
}

LemmaVerdict check_substructure_lemma_qf(const DynamicProgram& p, const ProgramState& s,
                                         const ProgramState& t, const std::vector<ElementId>& a,
                                         const std::vector<ElementId>& b, int m,
                                         const ModSequence& alpha, const ModSequence& beta) {
    auto pi = m_similar(s.structure, t.structure, a, b, m);
    if (!pi) return violated("precondition: tuples are not m-similar before the updates");
    std::set<ElementId> dom;
    for (const auto& [va, vb] : *pi) dom.insert(va);
    if (auto why = respecting_mismatch(alpha, beta, dom, *pi))
        return violated("precondition: sequences not pi-respecting: " + *why);
    ProgramState sa = run(p, s, alpha);
    ProgramState tb = run(p, t, beta);
    if (!m_similar(sa.structure, tb.structure, a, b, 0))
        return violated("final states are not 0-similar on the tuples");
    return {true, ""};
}

}  // namespace dyncomp
