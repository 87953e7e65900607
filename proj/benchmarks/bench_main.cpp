#include <random>

#include <benchmark/benchmark.h>

#include "dyncomp/builtins.hpp"
#include "dyncomp/compiler.hpp"
#include "dyncomp/padding.hpp"
#include "dyncomp/parse.hpp"

using namespace dyncomp;

namespace {

Schema graph_schema() {
    Schema s;
    s.add_relation("E", 2);
    return s;
}

void bench_three_clique_step(benchmark::State& state) {
    DynamicProgram p = builtin_three_clique();
    Structure db(p.input_schema, static_cast<std::size_t>(state.range(0)));
    ProgramState s = init_state(p, db);
    std::mt19937_64 rng(1);
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ElementId u = rng() % n, v = rng() % n;
        if (u == v) v = (v + 1) % n;
        benchmark::DoNotOptimize(step(p, s, {ModKind::Insert, "E", {u, v}}));
    }
}
BENCHMARK(bench_three_clique_step)->Arg(5)->Arg(10)->Arg(20);

void bench_compiled_three_clique_step(benchmark::State& state) {
    DynamicProgram p = compile_semipositive(three_clique_sentence());
    Structure db(p.input_schema, static_cast<std::size_t>(state.range(0)));
    ProgramState s = init_state(p, db);
    std::mt19937_64 rng(1);
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ElementId u = rng() % n, v = rng() % n;
        benchmark::DoNotOptimize(step(p, s, {ModKind::Insert, "E", {u, v}}));
    }
}
BENCHMARK(bench_compiled_three_clique_step)->Arg(5)->Arg(10);

void bench_padding_step(benchmark::State& state) {
    int n_plus = static_cast<int>(state.range(0));
    PaddingLayout layout{PaddingVariant::Ternary, n_plus};
    std::vector<bool> table(static_cast<std::size_t>(layout.num_graphs()), true);
    DynamicProgram p = build_padding_program(PaddingVariant::Ternary, n_plus, table);
    Structure db(p.input_schema, layout.domain_size());
    ProgramState s = init_state(p, db);
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        ElementId u = rng() % n_plus, v = rng() % n_plus;
        ModKind kind = rng() % 2 == 0 ? ModKind::Insert : ModKind::Delete;
        s = step(p, s, {kind, "E", {u, v}});
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bench_padding_step)->Arg(2)->Arg(3);

void bench_static_eval_three_clique(benchmark::State& state) {
    FormulaPtr sentence = three_clique_sentence();
    Structure g(graph_schema(), static_cast<std::size_t>(state.range(0)));
    std::mt19937_64 rng(1);
    int n = static_cast<int>(state.range(0));
    for (int i = 0; i < 2 * n; ++i)
        g.add_tuple("E", {static_cast<ElementId>(rng() % n), static_cast<ElementId>(rng() % n)});
    for (auto _ : state) benchmark::DoNotOptimize(static_eval(g, sentence));
}
BENCHMARK(bench_static_eval_three_clique)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
