// Velocity-block assembly: serial reference vs row-parallel assembly
// (serial and OpenMP execution) on the rounded rectangle.
#include <benchmark/benchmark.h>

#include "biharm/assembly.hpp"

using namespace biharm;

namespace {

Domain bar(int panels) { return Domain(make_rounded_rectangle(1.0, 0.5, 0.0025, panels)); }

void BM_Reference(benchmark::State& state) {
  const Domain dom = bar(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::assemble_velocity_block(dom));
  state.counters["n_d"] = dom.num_nodes();
}

void BM_Serial(benchmark::State& state) {
  const Domain dom = bar(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_velocity_block(dom, Execution::serial));
  state.counters["n_d"] = dom.num_nodes();
}

void BM_Parallel(benchmark::State& state) {
  const Domain dom = bar(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_velocity_block(dom, Execution::parallel));
  state.counters["n_d"] = dom.num_nodes();
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
