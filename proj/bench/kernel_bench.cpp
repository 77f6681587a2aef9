// Serial reference kernels against their OpenMP versions. Thread count
// follows OMP_NUM_THREADS / PCM_THREADS.

#include <benchmark/benchmark.h>

#include <vector>

#include "pcmri/graph_enum.hpp"
#include "pcmri/kernels.hpp"

using namespace pcmri;

namespace {

const GraphClass& cycle5() {
  static const GraphFamily family = GraphFamily::enumerate(5, 5);
  return family.classes()[*family.find(code_from_hex(5, "0dc"))];
}

const GraphClass& triangle() {
  static const GraphFamily family = GraphFamily::enumerate(3, 0);
  return family.classes().front();
}

template <auto Kernel>
void BM_sampled(benchmark::State& state) {
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(Kernel(cycle5(), CompletionMethod::saaty_bounded(), 42, samples));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_enumerated(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(Kernel(triangle(), CompletionMethod::saaty_bounded()));
  state.SetItemsProcessed(state.iterations() * 4913);
}

template <auto Kernel>
void BM_count(benchmark::State& state) {
  std::vector<double> ci(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ci.size(); ++i) ci[i] = 0.001 * static_cast<double>(i % 300);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ci, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_sampled<kernels::sampled_ci_serial>)->Name("sampled_ci/serial")->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sampled<kernels::sampled_ci_parallel>)->Name("sampled_ci/parallel")->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_enumerated<kernels::enumerated_ci_serial>)->Name("enumerated_ci/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerated<kernels::enumerated_ci_parallel>)->Name("enumerated_ci/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_count<kernels::count_acceptable_serial>)->Name("count_acceptable/serial")->Arg(1 << 20);
BENCHMARK(BM_count<kernels::count_acceptable_parallel>)->Name("count_acceptable/parallel")->Arg(1 << 20)->UseRealTime();

int main(int argc, char** argv) {
  apply_thread_limit_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
