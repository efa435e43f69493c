#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qcorr/dynamics.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracles.hpp"

using namespace qcorr;

namespace {

std::vector<BlochVector> state_pool(std::size_t count) {
  Rng rng(7);
  std::vector<BlochVector> pool;
  pool.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pool.push_back(sample_physical_bloch(rng));
  return pool;
}

void BM_bd_eigenvalues(benchmark::State& state) {
  const auto pool = state_pool(64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(bd_eigenvalues(pool[i++ % pool.size()]));
}
BENCHMARK(BM_bd_eigenvalues);

void BM_evaluate_all(benchmark::State& state) {
  const auto pool = state_pool(64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_all(pool[i++ % pool.size()]));
}
BENCHMARK(BM_evaluate_all);

void BM_fidelity(benchmark::State& state) {
  const auto pool = state_pool(64);
  std::vector<TwoQubitDensity> rho;
  for (const auto& c : pool) rho.push_back(bd_density(c));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fidelity(rho[i % rho.size()], rho[(i + 1) % rho.size()]));
    ++i;
  }
}
BENCHMARK(BM_fidelity);

void BM_lqu_general(benchmark::State& state) {
  const TwoQubitDensity rho = bd_density({1, -0.6, 0.6});
  for (auto _ : state) benchmark::DoNotOptimize(lqu_general(rho));
}
BENCHMARK(BM_lqu_general);

void BM_measurement_discord(benchmark::State& state) {
  const TwoQubitDensity rho = bd_density({1, -0.6, 0.6});
  const SearchBudget budget = SearchBudget::measurement_default();
  for (auto _ : state)
    benchmark::DoNotOptimize(measurement_discord(rho, budget));
}
BENCHMARK(BM_measurement_discord);

void BM_freezing_sweep(benchmark::State& state) {
  const ChannelSpec channel = ChannelSpec::markovian(ChannelKind::phase_flip, 1.0);
  const BlochVector c0 = freezing_initial({ChannelKind::phase_flip, 0.6, 1});
  const double tstar = threshold_time(0.6, channel)[0];
  std::vector<double> grid;
  for (int i = 0; i <= 300; ++i) grid.push_back(i * (tstar / 100.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(trajectory(c0, channel, grid, kAllMeasures));
}
BENCHMARK(BM_freezing_sweep);

}  // namespace

BENCHMARK_MAIN();
