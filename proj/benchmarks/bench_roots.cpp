#include <benchmark/benchmark.h>

#include "qloss/bounds.hpp"
#include "qloss/roots.hpp"

using namespace qloss;

static void BM_TakacsRootExponential(benchmark::State& state) {
    const auto d = Distribution::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(takacs_root(d, 2.0).root);
}
BENCHMARK(BM_TakacsRootExponential);

static void BM_TakacsRootHyperExp(benchmark::State& state) {
    const auto d = Distribution::hyperexponential({0.4, 0.6}, {0.5, 3.0});
    for (auto _ : state) benchmark::DoNotOptimize(takacs_root(d, 1.5).root);
}
BENCHMARK(BM_TakacsRootHyperExp);

static void BM_TakacsRootEmpirical(benchmark::State& state) {
    std::vector<double> samples(state.range(0));
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = 0.5 + static_cast<double>(i % 100) / 50.0;
    const auto d = Distribution::empirical(std::move(samples));
    const double mu = 2.0 / d.mean();
    for (auto _ : state) benchmark::DoNotOptimize(takacs_root(d, mu).root);
}
BENCHMARK(BM_TakacsRootEmpirical)->Arg(1000)->Arg(10000);

static void BM_BoundaryM(benchmark::State& state) {
    const MomentClass g{1.0, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(boundary_m(g, 2.0).m);
}
BENCHMARK(BM_BoundaryM);

BENCHMARK_MAIN();
