// Serial reference vs OpenMP kernels on the workloads behind scan, region and verify.

#include <benchmark/benchmark.h>

#include "qcause/constructions.hpp"
#include "qcause/kernels.hpp"

using qcause::Exec;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_RegionGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::region_grid(101, exec_of(state)));
}

void BM_AlphaCurve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::alpha_curve(101, exec_of(state)));
}

void BM_PhiCurve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::phi_curve(41, exec_of(state)));
}

void BM_QuantumBoundSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::quantum_bound_sweep(1000, 1, exec_of(state)));
}

void BM_BellCapSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::bell_cap_sweep(500, 50, 1, exec_of(state)));
}

void BM_NsTightness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcause::ns_tightness_sweep(500, 1, exec_of(state), true));
}

void BM_VPhiMaximum(benchmark::State& state) {
  const auto eval = qcause::batch_evaluator(exec_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(qcause::v_phi_maximum(200, 3, eval));
}

}  // namespace

// Arg 0 = serial reference, 1 = parallel.
BENCHMARK(BM_RegionGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AlphaCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuantumBoundSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BellCapSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NsTightness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VPhiMaximum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
