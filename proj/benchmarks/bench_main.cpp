#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/selector.hpp"
#include "wiretap/stepwise.hpp"

namespace {

using namespace wiretap;

SystemParams make_params(int m, int k, int n, int l_max) {
  SystemParams params;
  params.m_antennas = m;
  params.k_users = k;
  params.n_eve = n;
  params.l_max = l_max;
  params.weights = SystemParams::uniform_weights(k);
  return params;
}

std::shared_ptr<const ChannelPair> make_channels(int m, int k, int n,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  auto ch = std::make_shared<ChannelPair>();
  ch->h_main = generate_rayleigh(m, k, rng);
  ch->g_eve = generate_rayleigh(m, n, rng);
  return ch;
}

// Single-candidate growth evaluation at a given selection size.
void BM_EvalCandidate(benchmark::State& state) {
  const int m = 64, k = 4, n = 8;
  const int ell = static_cast<int>(state.range(0));
  const SystemParams params = make_params(m, k, n, m);
  auto channels = make_channels(m, k, n, 1);
  std::vector<int> selection(ell);
  for (int i = 0; i < ell; ++i) selection[i] = i;
  const SelectionState st = rebuild_state(channels, selection, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_candidate(st, ell, 0.8, params).growth);
  }
}
BENCHMARK(BM_EvalCandidate)->Arg(4)->Arg(16)->Arg(32)->Arg(63);

// Full greedy run at the dense-array working point.
void BM_RunStepwise(benchmark::State& state) {
  const int m = 64, k = 4, n = 8;
  const SystemParams params = make_params(m, k, n, m);
  auto channels = make_channels(m, k, n, 2);
  SelectorConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_stepwise(*channels, params, config).report.weighted_avg);
  }
}
BENCHMARK(BM_RunStepwise)->Unit(benchmark::kMillisecond);

// Grid + golden-section power optimization for one fixed subset.
void BM_OptimizePower(benchmark::State& state) {
  const int m = 16, k = 4, n = 4;
  const SystemParams params = make_params(m, k, n, m);
  auto channels = make_channels(m, k, n, 3);
  std::vector<int> selection = {0, 3, 5, 9};
  const SelectionState st = rebuild_state(channels, selection, 0.0);
  SelectorConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_power(st.terms, params, config));
  }
}
BENCHMARK(BM_OptimizePower)->Unit(benchmark::kMicrosecond);

// Exhaustive oracle on the acceptance-sized instance.
void BM_Exhaustive(benchmark::State& state) {
  const int m = 8, k = 2, n = 2;
  const SystemParams params = make_params(m, k, n, 3);
  auto channels = make_channels(m, k, n, 4);
  SelectorConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_exhaustive(*channels, params, config).report.weighted_avg);
  }
}
BENCHMARK(BM_Exhaustive)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
