// dyncomp: workbench for dynamic (update) programs over finite structures.
// Exit codes: 0 success/verified, 1 contract violation, 2 usage/parse error.
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dyncomp/builtins.hpp"
#include "dyncomp/compiler.hpp"
#include "dyncomp/io.hpp"
#include "dyncomp/padding.hpp"
#include "dyncomp/parse.hpp"
#include "dyncomp/ramsey.hpp"

using namespace dyncomp;

namespace {

Schema graph_schema() {
    Schema s;
    s.add_relation("E", 2);
    return s;
}

RunManifest manifest(const std::string& command, std::uint64_t seed,
                     std::map<std::string, std::string> parameters,
                     std::map<std::string, std::string> digests = {}) {
    RunManifest m;
    m.command = command;
    m.seed = seed;
    m.parameters = std::move(parameters);
    m.input_digests = std::move(digests);
    return m;
}

void emit(const std::string& path, const nlohmann::json& j) {
    std::string text = to_artifact_text(j);
    if (path.empty() || path == "-")
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(path, text);
}

DynamicProgram load_program(const std::string& path) {
    return program_from_json(nlohmann::json::parse(read_text_file(path)));
}

Structure load_structure(const std::string& path) {
    return structure_from_json(nlohmann::json::parse(read_text_file(path)));
}

FormulaPtr load_sentence(const std::string& path, const Schema& schema) {
    std::string text = read_text_file(path);
    // strip comment lines; the formula may span several lines
    std::string body;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        body += line + "\n";
    }
    return parse_formula(body, schema);
}

int run_demo_three_clique() {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, std::vector<std::string>{"a1", "a2", "a3", "a4", "a5"});
    for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{
             {"a2", "a3"}, {"a3", "a4"}, {"a1", "a5"}})
        db.add_tuple("E", {db.element(x), db.element(y)});
    ProgramState s = init_state(p, db);
    std::printf("three-clique maintenance, 5 nodes, edges (a2,a3) (a3,a4) (a1,a5)\n");
    std::printf("initial R:");
    for (const auto& t : s.structure.relation("R"))
        std::printf(" (%s,%s)", db.label(t[0]).c_str(), db.label(t[1]).c_str());
    std::printf("\n");
    Modification m{ModKind::Insert, "E", {db.element("a2"), db.element("a5")}};
    ProgramState s2 = step(p, s, m);
    std::printf("%s\n", trace_line(p, 0, m, s, s2).c_str());
    bool ok = s2.structure.holds("R", {db.element("a1"), db.element("a2")}) &&
              s2.structure.holds("R", {db.element("a2"), db.element("a1")});
    std::printf("R gains (a1,a2) and (a2,a1): %s\n", ok ? "yes" : "NO");
    return ok ? 0 : 1;
}

int run_demo_extension() {
    // pattern x3->x1, x1->x2, x3->x2, x2->x4 over nodes 0..3
    SubgraphPattern h{4, {{2, 0}, {0, 1}, {2, 1}, {1, 3}}};
    Structure g(graph_schema(), std::vector<std::string>{"a1", "a2", "a3", "a4"});
    g.add_tuple("E", {g.element("a3"), g.element("a2")});
    g.add_tuple("E", {g.element("a2"), g.element("a4")});
    ElementId a1 = g.element("a1"), a2 = g.element("a2"), a3 = g.element("a3");
    bool before_triple = extends_to(g, {a1, a2, a3}, h, Partition{{0, 1, 2}, {3}});
    bool before_pair = extends_to(g, {a1, a2}, h, Partition{{0, 1}, {2, 3}});
    Structure g2 = apply_modification(g, {ModKind::Insert, "E", {a3, a1}});
    bool after_pair = extends_to(g2, {a1, a2}, h, Partition{{0, 1}, {2, 3}});
    std::printf("4-node extension pattern; graph edges (a3,a2) (a2,a4)\n");
    std::printf("before ins(a3,a1): (a1,a2,a3) anchored on 3 nodes extends: %s\n",
                before_triple ? "yes" : "no");
    std::printf("before ins(a3,a1): (a1,a2) anchored on 2 nodes extends: %s\n",
                before_pair ? "yes" : "no");
    std::printf("after  ins(a3,a1): (a1,a2) anchored on 2 nodes extends: %s\n",
                after_pair ? "yes" : "no");
    return (before_triple && !before_pair && after_pair) ? 0 : 1;
}

int run_demo_max_outdegree() {
    DynamicProgram p = builtin_max_outdegree();
    Structure db(p.input_schema, 4);
    ProgramState s = init_state(p, db);
    std::printf("max-outdegree maintenance with auxiliary functions, 4 nodes\n");
    ModSequence ms{{ModKind::Insert, "E", {1, 2}},
                   {ModKind::Insert, "E", {1, 3}},
                   {ModKind::Insert, "E", {0, 2}},
                   {ModKind::Delete, "E", {1, 2}}};
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ProgramState next = step(p, s, ms[i]);
        std::printf("%s\n", trace_line(p, static_cast<int>(i), ms[i], s, next).c_str());
        s = next;
    }
    bool ok = s.structure.relation("Q") == std::set<std::vector<ElementId>>{{0}, {1}};
    std::printf("nodes of maximum outdegree: {e0, e1}: %s\n", ok ? "yes" : "NO");
    return ok ? 0 : 1;
}

int run_demo_padding() {
    PaddingLayout layout{PaddingVariant::Ternary, 2};
    std::vector<bool> table(16, false);
    for (std::uint64_t c = 0; c < 16; ++c)
        table[c] = (c & layout.edge_bit(0, 1)) && (c & layout.edge_bit(1, 0));
    DynamicProgram p = build_padding_program(PaddingVariant::Ternary, 2, table);
    Structure db(p.input_schema, layout.domain_size());
    ProgramState s = init_state(p, db);
    std::printf("padded lookup-table program, 2 graph nodes + %llu table elements\n",
                static_cast<unsigned long long>(layout.num_graphs()));
    std::printf("query: both (e0,e1) and (e1,e0) present\n");
    ModSequence ms{{ModKind::Insert, "E", {0, 1}},
                   {ModKind::Insert, "E", {1, 0}},
                   {ModKind::Delete, "E", {0, 1}}};
    std::vector<bool> expect{false, true, false};
    for (std::size_t i = 0; i < ms.size(); ++i) {
        s = step(p, s, ms[i]);
        bool q = s.query_bit(p);
        std::printf("step %zu: %s E e%u e%u -> Q=%d\n", i,
                    ms[i].kind == ModKind::Insert ? "ins" : "del", ms[i].tuple[0], ms[i].tuple[1],
                    q ? 1 : 0);
        if (q != expect[i]) {
            std::printf("unexpected query bit\n");
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for dynamic programs over changing finite structures"};
    app.require_subcommand(1);

    // compile: sentence file -> program file
    std::string c_sentence, c_out;
    auto* compile = app.add_subcommand(
        "compile", "compile a semi-positive existential sentence into an insertion-only program");
    compile->add_option("sentence", c_sentence, "sentence file (text)")->required();
    compile->add_option("-o,--output", c_out, "program file (default stdout)");

    // init: program + structure -> initial full state
    std::string i_program, i_structure, i_out;
    auto* init = app.add_subcommand("init", "compute the initial state for an input database");
    init->add_option("program", i_program)->required();
    init->add_option("structure", i_structure)->required();
    init->add_option("-o,--output", i_out);

    // run: program + structure + script -> final state + trace
    std::string r_program, r_structure, r_script, r_out;
    auto* run_cmd = app.add_subcommand("run", "apply a modification script and print the trace");
    run_cmd->add_option("program", r_program)->required();
    run_cmd->add_option("structure", r_structure)->required();
    run_cmd->add_option("script", r_script)->required();
    run_cmd->add_option("-o,--output", r_out, "final state file");

    // difftest
    std::string d_program, d_sentence, d_out;
    int d_domain = 5, d_sequences = 100, d_length = 10;
    std::uint64_t d_seed = 0;
    bool d_no_loops = false;
    auto* dt = app.add_subcommand("difftest",
                                  "compare a program against brute-force evaluation");
    dt->add_option("program", d_program)->required();
    dt->add_option("sentence", d_sentence)->required();
    dt->add_option("-n,--domain-size", d_domain);
    dt->add_option("-s,--sequences", d_sequences);
    dt->add_option("-l,--length", d_length);
    dt->add_option("--seed", d_seed);
    dt->add_flag("--no-loops", d_no_loops, "skip self-loop modifications");
    dt->add_option("-o,--output", d_out, "report file");

    // ramsey-clique: monochromatic clique in a structure's type coloring
    std::string rc_structure;
    int rc_target = 2;
    auto* rc = app.add_subcommand("ramsey-clique",
                                  "find a subset whose ordered tuples share one atomic type");
    rc->add_option("structure", rc_structure)->required();
    rc->add_option("-t,--target", rc_target, "subset size");

    // ramsey-anticolor
    int ra_n = 5, ra_k = 2, ra_size = 3, ra_budget = 10000;
    std::uint64_t ra_seed = 0;
    auto* ra = app.add_subcommand(
        "ramsey-anticolor", "search a 2-coloring without a monochromatic clique");
    ra->add_option("-n,--points", ra_n);
    ra->add_option("-k,--subset-size", ra_k);
    ra->add_option("-c,--clique-size", ra_size);
    ra->add_option("--seed", ra_seed);
    ra->add_option("--budget", ra_budget);

    // lb-gen
    std::vector<std::string> lg_labels;
    std::vector<std::string> lg_chosen;
    std::string lg_variant = "clique", lg_out;
    auto* lg = app.add_subcommand("lb-gen", "generate a lower-bound instance");
    lg->add_option("-a,--labels", lg_labels, "base element labels")->required();
    lg->add_option("-b,--chosen", lg_chosen,
                   "chosen subsets as comma-separated position lists, e.g. 0,1");
    lg->add_option("--variant", lg_variant)->check(CLI::IsMember({"clique", "eafo"}));
    lg->add_option("-o,--output", lg_out);

    // lb-demo
    std::string ld_variant = "clique";
    auto* ld = app.add_subcommand(
        "lb-demo", "end-to-end lower-bound trace: isomorphic windows, divergent answers");
    ld->add_option("--variant", ld_variant)->check(CLI::IsMember({"clique", "eafo"}));

    // similar
    std::string sm_structure;
    int sm_m = 1, sm_target = 2;
    auto* sm = app.add_subcommand("similar", "find pairwise m-similar tuples");
    sm->add_option("structure", sm_structure)->required();
    sm->add_option("-m,--depth", sm_m);
    sm->add_option("-t,--target", sm_target);

    // sublemma-suite
    int ss_trials = 100;
    std::uint64_t ss_seed = 0;
    auto* ss = app.add_subcommand(
        "sublemma-suite", "property campaign for the preserved-substructure lemma");
    ss->add_option("--trials", ss_trials);
    ss->add_option("--seed", ss_seed);

    // demo
    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "replay a worked example");
    demo->add_option("name", demo_name)
        ->required()
        ->check(CLI::IsMember({"three-clique", "extension", "max-outdegree", "padding"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*compile) {
            FormulaPtr sentence = load_sentence(c_sentence, graph_schema());
            DynamicProgram p = compile_semipositive(sentence);
            nlohmann::json j = program_to_json(p);
            j["manifest"] = manifest_to_json(manifest(
                "compile", 0, {{"sentence", c_sentence}},
                {{"sentence", sha256_hex(read_text_file(c_sentence))}}));
            emit(c_out, j);
            return 0;
        }
        if (*init) {
            DynamicProgram p = load_program(i_program);
            Structure db = load_structure(i_structure);
            ProgramState s = init_state(p, db);
            emit(i_out, structure_to_json(s.structure));
            return 0;
        }
        if (*run_cmd) {
            DynamicProgram p = load_program(r_program);
            Structure db = load_structure(r_structure);
            ProgramState s = init_state(p, db);
            ModSequence ms = parse_mod_script(read_text_file(r_script), s.structure);
            for (std::size_t i = 0; i < ms.size(); ++i) {
                ProgramState next = step(p, s, ms[i]);
                std::printf("%s\n", trace_line(p, static_cast<int>(i), ms[i], s, next).c_str());
                s = next;
            }
            if (!r_out.empty()) emit(r_out, structure_to_json(s.structure));
            return 0;
        }
        if (*dt) {
            DynamicProgram p = load_program(d_program);
            FormulaPtr sentence = load_sentence(d_sentence, p.input_schema);
            DifftestParams params;
            params.domain_size = d_domain;
            params.sequences = d_sequences;
            params.length = d_length;
            params.seed = d_seed;
            params.allow_loops = !d_no_loops;
            DifftestReport r = difftest(p, sentence, params);
            nlohmann::json j = difftest_report_to_json(r);
            j["manifest"] = manifest_to_json(manifest(
                "difftest", d_seed,
                {{"domain_size", std::to_string(d_domain)},
                 {"sequences", std::to_string(d_sequences)},
                 {"length", std::to_string(d_length)},
                 {"allow_loops", d_no_loops ? "false" : "true"}},
                {{"program", sha256_hex(read_text_file(d_program))},
                 {"sentence", sha256_hex(read_text_file(d_sentence))}}));
            emit(d_out, j);
            return r.ok() ? 0 : 1;
        }
        if (*rc) {
            Structure s = load_structure(rc_structure);
            auto subset = ordered_tau_clique(s, rc_target);
            if (!subset) {
                std::printf("no ordered type clique of size %d\n", rc_target);
                return 1;
            }
            std::printf("clique:");
            for (ElementId e : *subset) std::printf(" %s", s.label(e).c_str());
            std::printf("\n");
            return 0;
        }
        if (*ra) {
            auto coloring = search_antiramsey_coloring(ra_n, ra_k, ra_size, ra_seed, ra_budget);
            if (!coloring) {
                std::printf("no coloring found within budget\n");
                return 1;
            }
            std::printf("verified coloring (subset rank -> color):");
            for (int c : coloring->colors) std::printf(" %d", c);
            std::printf("\n");
            return 0;
        }
        if (*lg || *ld) {
            LowerBoundVariant variant = (*lg ? lg_variant : ld_variant) == "eafo"
                                            ? LowerBoundVariant::Eafo
                                            : LowerBoundVariant::Clique;
            if (*lg) {
                std::set<std::set<int>> chosen;
                for (const auto& item : lg_chosen) {
                    std::set<int> sub;
                    std::istringstream in(item);
                    std::string tok;
                    while (std::getline(in, tok, ',')) sub.insert(std::stoi(tok));
                    chosen.insert(sub);
                }
                LowerBoundInstance inst =
                    build_lowerbound_instance(lg_labels, chosen, 1, variant);
                nlohmann::json j = structure_to_json(inst.structure);
                j["manifest"] = manifest_to_json(manifest(
                    "lb-gen", 0, {{"variant", *lg ? lg_variant : ld_variant}}));
                emit(lg_out, j);
                return 0;
            }
            LowerBoundInstance inst =
                build_lowerbound_instance({"a1", "a2", "a3"}, {{0, 1}}, 1, variant);
            std::set<int> chosen{0, 1}, other{0, 2};
            Structure after_alpha = inst.structure, after_beta = inst.structure;
            for (const auto& m : completion_sequence(inst, chosen))
                after_alpha = apply_modification(after_alpha, m);
            for (const auto& m : completion_sequence(inst, other))
                after_beta = apply_modification(after_beta, m);
            FormulaPtr q = variant == LowerBoundVariant::Clique ? three_clique_sentence()
                                                                : eafo_sentence();
            bool qa = static_eval(after_alpha, q), qb = static_eval(after_beta, q);
            std::printf("windows {a1,a2} and {a1,a3} are edgeless, hence isomorphic\n");
            std::printf("after completing the chosen pair:   query = %d\n", qa ? 1 : 0);
            std::printf("after completing an unchosen pair:  query = %d\n", qb ? 1 : 0);
            return (qa && !qb) ? 0 : 1;
        }
        if (*sm) {
            Structure s = load_structure(sm_structure);
            auto subset = find_similar_tuples(s, sm_m, sm_target);
            if (!subset) {
                std::printf("no pairwise %d-similar subset of size %d\n", sm_m, sm_target);
                return 1;
            }
            std::printf("subset:");
            for (ElementId e : *subset) std::printf(" %s", s.label(e).c_str());
            std::printf("\n");
            return 0;
        }
        if (*ss) {
            std::mt19937_64 rng(ss_seed);
            DynamicProgram p = builtin_three_clique();
            int violations = 0;
            for (int trial = 0; trial < ss_trials; ++trial) {
                Structure db(p.input_schema, 6);
                for (int i = 0; i < 4; ++i) {
                    ElementId u = 3 + rng() % 3, v = 3 + rng() % 3;
                    if (u != v) db.add_tuple("E", {u, v});
                }
                ProgramState s = init_state(p, db);
                std::map<ElementId, ElementId> pi{{0, 1}, {1, 2}, {2, 0}};
                ModSequence alpha, beta;
                for (int i = 0; i < 5; ++i) {
                    ElementId u = rng() % 3, v = rng() % 3;
                    if (u == v) continue;
                    alpha.push_back({ModKind::Insert, "E", {u, v}});
                    beta.push_back({ModKind::Insert, "E", {pi[u], pi[v]}});
                }
                LemmaVerdict v =
                    check_substructure_lemma(p, s, s, {0, 1, 2}, {1, 2, 0}, pi, alpha, beta);
                if (!v.holds) {
                    std::printf("trial %d: %s\n", trial, v.detail.c_str());
                    ++violations;
                }
            }
            std::printf("%d trials, %d violations\n", ss_trials, violations);
            return violations == 0 ? 0 : 1;
        }
        if (*demo) {
            if (demo_name == "three-clique") return run_demo_three_clique();
            if (demo_name == "extension") return run_demo_extension();
            if (demo_name == "max-outdegree") return run_demo_max_outdegree();
            return run_demo_padding();
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error at line %d, column %d: %s\n", e.line, e.column,
                     e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
