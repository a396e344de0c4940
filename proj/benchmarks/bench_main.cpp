#include <benchmark/benchmark.h>

#include "qlctx/density.hpp"
#include "qlctx/frequency.hpp"
#include "qlctx/hilbert.hpp"
#include "qlctx/kolmogorov.hpp"
#include "qlctx/supplementarity.hpp"

using namespace qlctx;

namespace {

ContextData fixture() {
    const Mat2 u{{{0.5, 0.5}, {0.5, 0.5}}};
    return make_context({0.5, 0.5}, {0.7, 0.3}, u, u);
}

void BM_Classify(benchmark::State& state) {
    const auto d = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(classify_context(d));
}
BENCHMARK(BM_Classify);

void BM_KolmogorovTest(benchmark::State& state) {
    const auto d = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_test(d, 1e-9));
}
BENCHMARK(BM_KolmogorovTest);

void BM_JointOracle(benchmark::State& state) {
    const auto d = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_joint_oracle(d));
}
BENCHMARK(BM_JointOracle);

void BM_Reconstruct(benchmark::State& state) {
    const auto d = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(d));
}
BENCHMARK(BM_Reconstruct);

void BM_Simulate(benchmark::State& state) {
    const auto d = fixture();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_context(d, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 6);
}
BENCHMARK(BM_Simulate)->Arg(1 << 16)->Arg(1 << 20);

void BM_DensityCheckpoints(benchmark::State& state) {
    const auto c = oscillating_subset_of_evens();
    for (auto _ : state) benchmark::DoNotOptimize(density_checkpoints(c, static_cast<std::uint64_t>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DensityCheckpoints)->Arg(1 << 20);

void BM_Counterexample(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(incompatibility_counterexample(std::uint64_t{1} << 20));
}
BENCHMARK(BM_Counterexample);

}  // namespace
