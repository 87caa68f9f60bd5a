// Serial reference vs OpenMP kernel for the three parallel hot spots.

#include <benchmark/benchmark.h>

#include "benlab/chain.hpp"
#include "benlab/growth.hpp"
#include "benlab/schemes.hpp"

namespace {

using namespace benlab;

const ChainSpec& chain4() {
  static const ChainSpec spec = preset("flehinger", {4, 1e5});
  return spec;
}

void BM_chain_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(simulate_chain_serial(chain4(), state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_chain_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(simulate_chain(chain4(), state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

ScanConfig scan_config() {
  ScanConfig c;
  c.lo_percent = 1;
  c.hi_percent = 60;
  c.step = 0.01;
  return c;
}

void BM_scan_serial(benchmark::State& state) {
  const auto c = scan_config();
  for (auto _ : state) benchmark::DoNotOptimize(rate_scan_serial(c));
}

void BM_scan_parallel(benchmark::State& state) {
  const auto c = scan_config();
  for (auto _ : state) benchmark::DoNotOptimize(rate_scan(c));
}

void BM_scheme_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(simple_scheme_serial(1, 1, state.range(0)));
}

void BM_scheme_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(simple_scheme(1, 1, state.range(0)));
}

}  // namespace

BENCHMARK(BM_chain_serial)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chain_parallel)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scheme_serial)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scheme_parallel)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
