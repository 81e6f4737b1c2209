// Serial reference kernel vs the OpenMP kernel on the paper-2015 noise model.
//
//   ./build/bench/kcbs_bench --benchmark_counters_tabular=true

#include <benchmark/benchmark.h>

#include "kcbs/experiment.hpp"
#include "kcbs/io.hpp"

namespace {

kcbs::RunConfig bench_config(std::int64_t shots) {
  kcbs::RunConfig c = kcbs::load_preset("paper-2015");
  c.shots_per_term = shots;
  return c;
}

void set_counters(benchmark::State& state, std::int64_t shots) {
  const auto total = static_cast<double>(state.iterations()) * 6.0 * static_cast<double>(shots);
  state.counters["shots/s"] = benchmark::Counter(total, benchmark::Counter::kIsRate);
}

void BM_Serial(benchmark::State& state) {
  const auto c = bench_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kcbs::count_shots_serial(c));
  set_counters(state, state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto c = bench_config(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kcbs::count_shots_parallel(c, threads));
  set_counters(state, state.range(0));
}

void BM_SingleShot(benchmark::State& state) {
  const auto seqs = kcbs::protocol_sequences(kcbs::PairOrder::Forward);
  const auto noise = kcbs::load_preset("paper-2015").noise;
  std::uint64_t shot = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(kcbs::simulate_shot(seqs[shot % 6], noise, kcbs::stream_seed(1, shot % 6, shot++)));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{2000, 20000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SingleShot);

BENCHMARK_MAIN();
