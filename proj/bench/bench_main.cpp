// Serial against parallel timings for the search and the batch kernels.

#include "pbox/benchmark.hpp"
#include "pbox/inventory.hpp"
#include "pbox/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace pbox;

namespace {

// ============================================================================
// Inputs
// ============================================================================

std::vector<double> grid(std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = 5.17 + 1.19 * static_cast<double>(i) / static_cast<double>(n);
    }
    return xs;
}

std::vector<PboxInterval> candidates(std::size_t n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PboxInterval> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 100.0 * u(rng);
        const double b = a + 0.01 + 50.0 * u(rng);
        const double w = b - a;
        out.emplace_back(CdfPoint{a, u(rng), 2.0 * u(rng) / w}, CdfPoint{b, u(rng), 2.0 * u(rng) / w});
    }
    return out;
}

const PboxInterval sample_interval({5.17, 0.1, 1.2}, {6.36, 0.7, 0.57});

// ============================================================================
// Benchmarks
// ============================================================================

void bm_search_serial(benchmark::State& state) {
    const auto inst = inventory::generate_instance(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inventory::search_serial(inst));
    }
}

void bm_search_parallel(benchmark::State& state) {
    const auto inst = inventory::generate_instance(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inventory::search_parallel(inst));
    }
}

void bm_grid_serial(benchmark::State& state) {
    const auto xs = grid(static_cast<std::size_t>(state.range(0)));
    std::vector<CdfBounds> out(xs.size());
    for (auto _ : state) {
        kernels::project_grid_serial(sample_interval, xs, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_grid_parallel(benchmark::State& state) {
    const auto xs = grid(static_cast<std::size_t>(state.range(0)));
    std::vector<CdfBounds> out(xs.size());
    for (auto _ : state) {
        kernels::project_grid_parallel(sample_interval, xs, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_dominance_serial(benchmark::State& state) {
    const auto batch = candidates(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::count_dominance_violations_serial(batch));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_dominance_parallel(benchmark::State& state) {
    const auto batch = candidates(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::count_dominance_violations_parallel(batch));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_search_serial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_search_parallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_grid_serial)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(bm_grid_parallel)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(bm_dominance_serial)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(bm_dominance_parallel)->Arg(1 << 12)->Arg(1 << 18);

BENCHMARK_MAIN();
