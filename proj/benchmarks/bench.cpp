#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "bitcomp/asymptotics.hpp"
#include "bitcomp/densities.hpp"
#include "bitcomp/exact_means.hpp"
#include "bitcomp/poisson_model.hpp"
#include "bitcomp/sorters.hpp"

namespace {

using namespace bitcomp;

std::vector<BitKey> uniform_keys(std::size_t n, SplitMix64& rng) {
    std::vector<BitKey> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back(BitKey::uniform(rng));
    return keys;
}

void BM_quicksort(benchmark::State& state) {
    const std::size_t n = state.range(0);
    SplitMix64 rng(1);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PivotScript s(seed++);
        auto [sorted, tally] = quicksort(uniform_keys(n, rng), s);
        benchmark::DoNotOptimize(tally.bit_comparisons);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_quicksort)->Arg(256)->Arg(1024)->Arg(4096);

void BM_bitsquick(benchmark::State& state) {
    const std::size_t n = state.range(0);
    SplitMix64 rng(2);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        PivotScript s(seed++);
        auto [sorted, tally] = bitsquick(uniform_keys(n, rng), s);
        benchmark::DoNotOptimize(tally.bit_comparisons);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_bitsquick)->Arg(256)->Arg(1024)->Arg(4096);

void BM_radix_exchange(benchmark::State& state) {
    const std::size_t n = state.range(0);
    SplitMix64 rng(3);
    for (auto _ : state) {
        auto [sorted, inspections] = radix_exchange(uniform_keys(n, rng));
        benchmark::DoNotOptimize(inspections);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_radix_exchange)->Arg(1024)->Arg(4096);

void BM_exact_bit_mean(benchmark::State& state) {
    const unsigned long n = state.range(0);
    for (auto _ : state) {
        const Rational v = exact_bit_mean(n);
        benchmark::DoNotOptimize(&v);
    }
}
BENCHMARK(BM_exact_bit_mean)->Arg(100)->Arg(1000)->Arg(5000);

void BM_rice_exact_bit_mean(benchmark::State& state) {
    const unsigned long n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(rice_exact_bit_mean(n));
}
BENCHMARK(BM_rice_exact_bit_mean)->Arg(100)->Arg(100000)->Arg(100000000);

void BM_poisson_bit_mean_exact(benchmark::State& state) {
    const double lam = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(poisson_bit_mean_exact(lam).value);
}
BENCHMARK(BM_poisson_bit_mean_exact)->Arg(10)->Arg(1000)->Arg(100000);

void BM_mu_f_linear(benchmark::State& state) {
    const int depth = state.range(0);
    const auto lin = DensitySpec::linear();
    for (auto _ : state) benchmark::DoNotOptimize(mu_f(1000, lin, depth).value);
}
BENCHMARK(BM_mu_f_linear)->Arg(12)->Arg(16)->Arg(20);

void BM_density_sampling(benchmark::State& state) {
    auto spec = std::make_shared<const DensitySpec>(DensitySpec::linear());
    DensitySampler sampler(spec, 5);
    for (auto _ : state) {
        BitKey k = sampler.sample();
        benchmark::DoNotOptimize(k.bit(16));
    }
}
BENCHMARK(BM_density_sampling);

} // namespace

BENCHMARK_MAIN();
