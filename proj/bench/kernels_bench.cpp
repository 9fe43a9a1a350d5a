// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "labs/kernels.hpp"
#include "labs/landscape.hpp"
#include "labs/pauli.hpp"
#include "labs/statevector.hpp"

namespace {

using namespace labsolve;

void BM_BruteForceSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::brute_force_serial(state.range(0)));
}
void BM_BruteForceParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::brute_force_parallel(state.range(0)));
}

void BM_HistogramSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::energy_histogram_serial(state.range(0)));
}
void BM_HistogramParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::energy_histogram_parallel(state.range(0)));
}

void BM_LabsMinimaSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::labs_local_minima_serial(state.range(0)));
}
void BM_LabsMinimaParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::labs_local_minima_parallel(state.range(0)));
}

void BM_SkMinimaSerial(benchmark::State& state) {
  const auto inst = SKInstance::random(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sk_local_minima_serial(inst.n, inst.couplings));
}
void BM_SkMinimaParallel(benchmark::State& state) {
  const auto inst = SKInstance::random(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sk_local_minima_parallel(inst.n, inst.couplings));
}

// A four-body Y-containing word, the dominant rotation in the DCQO circuit.
template <bool Parallel>
void BM_PauliRotation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto sv = StateVector::plus_state(n);
  const PauliWord w{{1, PauliAxis::Y}, {2, PauliAxis::Z}, {n / 2, PauliAxis::Z}, {n, PauliAxis::Z}};
  const auto flip = w.flip_mask(n), phase = w.phase_mask(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::pauli_rotation_parallel(sv.amplitudes(), flip, phase, w.y_count(), 0.01);
    } else {
      kernels::pauli_rotation_serial(sv.amplitudes(), flip, phase, w.y_count(), 0.01);
    }
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

}  // namespace

BENCHMARK(BM_BruteForceSerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramSerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LabsMinimaSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LabsMinimaParallel)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SkMinimaSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SkMinimaParallel)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PauliRotation<false>)->Name("BM_PauliRotationSerial")->DenseRange(14, 22, 4);
BENCHMARK(BM_PauliRotation<true>)->Name("BM_PauliRotationParallel")->DenseRange(14, 22, 4);

BENCHMARK_MAIN();
