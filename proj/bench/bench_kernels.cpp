// Serial reference vs OpenMP kernels on the workloads the experiments use.

#include <benchmark/benchmark.h>

#include "thetalab/divisor.hpp"
#include "thetalab/families.hpp"
#include "thetalab/kernels.hpp"

namespace {

using namespace thetalab;

void BM_ThetaConstantsSerial(benchmark::State& state) {
    const RiemannMatrix tau = random_siegel(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::theta_constants_serial(tau));
}

void BM_ThetaConstantsParallel(benchmark::State& state) {
    const RiemannMatrix tau = random_siegel(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::theta_constants_parallel(tau));
}

void BM_CountSerial(benchmark::State& state) {
    const ThetaDivisor div(random_siegel(static_cast<std::size_t>(state.range(0)), 11));
    const CVector a = CVector::Zero(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_on_translate(div, a, false));
}

void BM_CountParallel(benchmark::State& state) {
    const ThetaDivisor div(random_siegel(static_cast<std::size_t>(state.range(0)), 11));
    const CVector a = CVector::Zero(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_on_translate(div, a, true));
}

void BM_SecondOrderSerial(benchmark::State& state) {
    const auto g = static_cast<std::size_t>(state.range(0));
    const RiemannMatrix tau = random_siegel(g, 11);
    std::vector<CVector> pts;
    for (const auto& x : all_torsion_points(g)) pts.push_back(x.to_complex(tau));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::second_order_batch_serial(pts, tau));
}

void BM_SecondOrderParallel(benchmark::State& state) {
    const auto g = static_cast<std::size_t>(state.range(0));
    const RiemannMatrix tau = random_siegel(g, 11);
    std::vector<CVector> pts;
    for (const auto& x : all_torsion_points(g)) pts.push_back(x.to_complex(tau));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::second_order_batch_parallel(pts, tau));
}

}  // namespace

BENCHMARK(BM_ThetaConstantsSerial)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaConstantsParallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSerial)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecondOrderSerial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecondOrderParallel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
