#include <benchmark/benchmark.h>

#include <random>

#include "dmc/expander.hpp"
#include "dmc/localcuts.hpp"

using namespace dmc;

namespace {

Multigraph random_graph(int n, int extra, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<VertexId>(rng() % i), 1);
    for (int k = 0; k < extra; ++k) {
        VertexId a = rng() % n, b = rng() % n;
        if (a != b && !g.find_edge(a, b)) g.add_edge(a, b, 1);
    }
    return g;
}

void BM_ExhaustiveConductanceSerial(benchmark::State& st) {
    auto lg = LocalGraph::whole(random_graph(static_cast<int>(st.range(0)), 2 * static_cast<int>(st.range(0)), 1));
    for (auto _ : st) benchmark::DoNotOptimize(exhaustive_conductance_serial(lg));
}

void BM_ExhaustiveConductanceParallel(benchmark::State& st) {
    auto lg = LocalGraph::whole(random_graph(static_cast<int>(st.range(0)), 2 * static_cast<int>(st.range(0)), 1));
    for (auto _ : st) benchmark::DoNotOptimize(exhaustive_conductance_parallel(lg));
}

struct SweepInput {
    Multigraph g;
    AuxGraph aux;
};

SweepInput sweep_input(int n) {
    SweepInput in{random_graph(n, n / 2, 2), {}};
    std::vector<std::vector<VertexId>> cl((n + 11) / 12);
    for (int i = 0; i < n; ++i) cl[i / 12].push_back(i);
    in.aux = build_aux(in.g, Partition::from_clusters(cl));
    return in;
}

void BM_SweepAllSerial(benchmark::State& st) {
    auto in = sweep_input(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_all(in.aux, in.g, 8, 2, false));
}

void BM_SweepAllParallel(benchmark::State& st) {
    auto in = sweep_input(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_all(in.aux, in.g, 8, 2, true));
}

}  // namespace

BENCHMARK(BM_ExhaustiveConductanceSerial)->Arg(12)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveConductanceParallel)->Arg(12)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepAllSerial)->Arg(120)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepAllParallel)->Arg(120)->Arg(600)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
