// Parallel amplitude-pair kernels against the serial reference scans.

#include <benchmark/benchmark.h>

#include <random>

#include "givens/kernels.hpp"
#include "givens/random.hpp"

namespace {

using namespace givens;

Gate controlled_single(int n) {
    Gate g = givens_gate(0.3, n / 2, n - 1);
    g.controls = {{0, 1}, {1, 0}};
    return g;
}

Amplitudes random_amps(std::size_t size) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    Amplitudes a(size);
    for (auto& x : a) x = {normal(rng), normal(rng)};
    return a;
}

template <bool Reference>
void BM_FullState(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PairOp op = make_pair_op(controlled_single(n), n);
    Amplitudes amps = random_amps(std::size_t{1} << n);
    for (auto _ : state) {
        if constexpr (Reference)
            reference::apply_pair_op(amps, n, op);
        else
            apply_pair_op(amps, n, op);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Reference>
void BM_Subspace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SubspaceMap map(n, n / 2);
    const PairOp op = make_pair_op(controlled_single(n), n);
    Amplitudes amps = random_amps(map.dim());
    for (auto _ : state) {
        if constexpr (Reference)
            reference::apply_pair_op(amps, map, op);
        else
            apply_pair_op(amps, map, op);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

BENCHMARK(BM_FullState<false>)->Name("full/parallel")->DenseRange(12, 20, 4);
BENCHMARK(BM_FullState<true>)->Name("full/reference")->DenseRange(12, 20, 4);
BENCHMARK(BM_Subspace<false>)->Name("subspace/parallel")->DenseRange(8, 16, 4);
BENCHMARK(BM_Subspace<true>)->Name("subspace/reference")->DenseRange(8, 16, 4);

}  // namespace

BENCHMARK_MAIN();
