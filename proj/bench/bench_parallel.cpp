// Serial reference against the OpenMP kernel for the three parallel loops.

#include <benchmark/benchmark.h>

#include "resco/chains.hpp"
#include "resco/diagnostics.hpp"
#include "resco/oracle.hpp"

using namespace resco;

static void BM_BruteForceSerial(benchmark::State& state) {
  const auto m = EnergyModel::mis(gen_er(std::size_t(state.range(0)), 0.3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum_serial(m));
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << state.range(0)));
}
BENCHMARK(BM_BruteForceSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_BruteForceParallel(benchmark::State& state) {
  const auto m = EnergyModel::mis(gen_er(std::size_t(state.range(0)), 0.3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum(m));
  state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << state.range(0)));
}
BENCHMARK(BM_BruteForceParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static SamplerConfig dmala() {
  SamplerConfig s;
  s.kind = SamplerKind::DMALA;
  return s;
}

static void BM_EscapeSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(escaping_rate_serial(dmala(), 0.5, 20000, 20, 1));
}
BENCHMARK(BM_EscapeSerial)->Unit(benchmark::kMillisecond);

static void BM_EscapeParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(escaping_rate(dmala(), 0.5, 20000, 20, 1));
}
BENCHMARK(BM_EscapeParallel)->Unit(benchmark::kMillisecond);

static ChainSetup chain_setup() {
  ChainSetup s;
  s.schedule = Schedule(1.0, 1e-3, 2000);
  s.reheat = ReheatConfig{};
  s.chains = 8;
  return s;
}

static void BM_ChainsSerial(benchmark::State& state) {
  const auto m = EnergyModel::mis(gen_er(150, 0.05, 1));
  const auto setup = chain_setup();
  for (auto _ : state) benchmark::DoNotOptimize(run_chains_serial(m, setup));
}
BENCHMARK(BM_ChainsSerial)->Unit(benchmark::kMillisecond);

static void BM_ChainsParallel(benchmark::State& state) {
  const auto m = EnergyModel::mis(gen_er(150, 0.05, 1));
  const auto setup = chain_setup();
  for (auto _ : state) benchmark::DoNotOptimize(run_chains(m, setup));
}
BENCHMARK(BM_ChainsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
