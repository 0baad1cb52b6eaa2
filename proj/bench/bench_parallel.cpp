// Serial reference vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "laplace/boxdiag.hpp"
#include "laplace/coeff.hpp"
#include "laplace/invariants.hpp"
#include "laplace/linalg.hpp"
#include "laplace/symmetrizer.hpp"

using namespace laplace;

namespace {

Execution mode(const benchmark::State& s) { return s.range(1) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(1) ? "parallel" : "serial"); }

void BM_KernelBasis(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(kernel_basis(static_cast<unsigned>(s.range(0)), mode(s)));
    label(s);
}

void BM_RankModPrime(benchmark::State& s) {
    const auto m = delta_matrix(static_cast<unsigned>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(linalg::rank_mod_prime(m, mode(s)));
    label(s);
}

void BM_GaugeTransform(benchmark::State& s) {
    const CoeffPoly p = generate(static_cast<unsigned>(s.range(0)), IndexSet::range(s.range(0))).a_form;
    for (auto _ : s) benchmark::DoNotOptimize(gauge_transform(p, mode(s)));
    label(s);
}

void BM_OrderZeroOverbar(benchmark::State& s) {
    const unsigned n = static_cast<unsigned>(s.range(0));
    const DiagramPoly d = fundamental(n);
    for (auto _ : s) benchmark::DoNotOptimize(order_zero_overbar(d, IndexSet::range(n), mode(s)));
    label(s);
}

void BM_Catalog(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(catalog(static_cast<unsigned>(s.range(0)), 4, mode(s)));
    label(s);
}

} // namespace

BENCHMARK(BM_KernelBasis)->ArgsProduct({{9, 11}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankModPrime)->ArgsProduct({{9, 11}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaugeTransform)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderZeroOverbar)->ArgsProduct({{5, 6}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Catalog)->ArgsProduct({{5}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
