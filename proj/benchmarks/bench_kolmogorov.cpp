#include <benchmark/benchmark.h>

#include "qloss/distribution.hpp"
#include "qloss/kolmogorov.hpp"
#include "qloss/rng.hpp"

using namespace qloss;

static void BM_DistanceAtomicPair(benchmark::State& state) {
    const auto a = Distribution::two_point_gmax(1.0, 2.0);
    const auto b = Distribution::mixture(0.6, Distribution::deterministic(0.5),
                                         Distribution::deterministic(2.25));
    for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_distance(a, b).value);
}
BENCHMARK(BM_DistanceAtomicPair);

static void BM_DistanceSmoothPair(benchmark::State& state) {
    const auto a = Distribution::exponential(1.0);
    const auto b = Distribution::erlang(2, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_distance(a, b).value);
}
BENCHMARK(BM_DistanceSmoothPair);

static void BM_DistanceEmpiricalVsSmooth(benchmark::State& state) {
    Rng rng({1, "bench"});
    std::vector<double> draws(state.range(0));
    for (auto& x : draws) x = rng.exponential(1.0);
    const auto emp = Distribution::empirical(std::move(draws));
    const auto ref = Distribution::exponential(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_distance(emp, ref).value);
}
BENCHMARK(BM_DistanceEmpiricalVsSmooth)->Arg(10000)->Arg(100000);

static void BM_LimitCdf(benchmark::State& state) {
    double z = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kolmogorov_limit_cdf(z));
        z = z < 3.0 ? z + 1e-3 : 0.3;
    }
}
BENCHMARK(BM_LimitCdf);

BENCHMARK_MAIN();
