#include <benchmark/benchmark.h>

#include "qloss/sim.hpp"

using namespace qloss;

static void BM_SimulateGim1n(benchmark::State& state) {
    const GIM1nConfig cfg{Distribution::exponential(1.0), 2.0, 10};
    const auto arrivals = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_gim1n(cfg, arrivals, {seed++, "bench"}).point);
    state.SetItemsProcessed(state.iterations() * arrivals);
}
BENCHMARK(BM_SimulateGim1n)->Arg(100000);

static void BM_SimulateBuffer(benchmark::State& state) {
    MGI1BufferConfig cfg;
    cfg.lambda = 1.0;
    cfg.service = Distribution::exponential(2.0 / 3.0);
    cfg.capacity = 100.0;
    cfg.mean_batch = 2.0;
    cfg.batch_lower = 1;
    cfg.batch_upper = 3;
    cfg.error_prob = 0.1;
    const auto batches = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_mgi1_buffer(cfg, batches, {seed++, "bench"}).point);
    state.SetItemsProcessed(state.iterations() * batches);
}
BENCHMARK(BM_SimulateBuffer)->Arg(100000);

static void BM_SimulatePriority(benchmark::State& state) {
    PriorityConfig cfg;
    cfg.lambda = 1.0;
    cfg.interarrival = Distribution::exponential(1.0);
    cfg.type_probs = {0.5, 0.5};
    cfg.group_size = 2;
    cfg.mu = 0.75;
    cfg.capacities = {12, 6};
    const auto departures = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_priority(cfg, departures, {seed++, "bench"})[0].point);
    state.SetItemsProcessed(state.iterations() * departures);
}
BENCHMARK(BM_SimulatePriority)->Arg(100000);

BENCHMARK_MAIN();
