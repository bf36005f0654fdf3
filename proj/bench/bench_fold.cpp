// Serial versus OpenMP fold on sequences designed for a fixed target, which
// is the workload the search generates.

#include <benchmark/benchmark.h>

#include "inv/fold.hpp"

namespace {

inv::RnaSequence designed(int n, std::uint64_t seed) {
  // Crossing stems, padded or followed by a hairpin to reach length n.
  const std::string text = n == 18   ? "(((..[[[..)))..]]]"
                           : n == 24 ? "(((..[[[..)))..]]]::::::"
                           : n == 30 ? "(((..[[[..)))..]]](((....)))::"
                                     : "(((..[[[..)))..]]]::((((....))))::::";
  inv::Rng rng(seed);
  return inv::make_start(inv::parse_structure(text), rng);
}

void BM_FoldSerial(benchmark::State& state) {
  const inv::ExhaustiveFolder folder;
  const auto seq = designed(static_cast<int>(state.range(0)), 7);
  const int count = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(folder.fold_serial(seq, count));
}

void BM_FoldParallel(benchmark::State& state) {
  const inv::ExhaustiveFolder folder;
  const auto seq = designed(static_cast<int>(state.range(0)), 7);
  const int count = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(folder.fold_parallel(seq, count));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {18, 24, 30, 36}) {
    for (int count : {1, 50}) b->Args({n, count});
  }
}

}  // namespace

BENCHMARK(BM_FoldSerial)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FoldParallel)->Apply(sizes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
