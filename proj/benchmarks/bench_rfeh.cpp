// Microbenchmarks for the hot paths: channel sampling, closed-form combining,
// the numeric weight optimizer, and the Monte Carlo sweep.

#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "rfeh/channel.hpp"
#include "rfeh/combining.hpp"
#include "rfeh/simulation.hpp"

namespace {

rfeh::ChannelConfig make_config(std::size_t num_antennas) {
  rfeh::ChannelConfig config;
  config.num_antennas = num_antennas;
  config.path_loss = 1e-3;
  return config;
}

rfeh::ConsumptionProfile make_profile(rfeh::CombinerKind kind, double beta_w) {
  rfeh::ConsumptionProfile profile;
  profile.kind = kind;
  profile.beta_w = beta_w;
  profile.per_branch_w = 0.5e-3;
  profile.summation_w = 1e-3;
  return profile;
}

rfeh::ExperimentSpec make_spec(std::size_t num_antennas, std::uint64_t trials) {
  rfeh::ExperimentSpec spec;
  spec.channel_config = make_config(num_antennas);
  spec.profiles = {make_profile(rfeh::CombinerKind::SC, 0.0),
                   make_profile(rfeh::CombinerKind::EGC, 1e-3),
                   make_profile(rfeh::CombinerKind::MRC, 2e-3)};
  spec.techniques = {rfeh::CombinerKind::SC, rfeh::CombinerKind::EGC,
                     rfeh::CombinerKind::MRC};
  for (int i = 0; i <= 30; ++i) spec.transmit_power_grid_w.push_back(0.1 * i);
  spec.trials = trials;
  spec.seed = 1;
  return spec;
}

void BM_SampleChannel(benchmark::State& state) {
  const rfeh::ChannelConfig config =
      make_config(static_cast<std::size_t>(state.range(0)));
  rfeh::ChannelRealization scratch;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    rfeh::sample_channel_into(config, 1, trial++, scratch);
    benchmark::DoNotOptimize(scratch.coefficients.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(state.range(0)));
}
BENCHMARK(BM_SampleChannel)->Arg(2)->Arg(8)->Arg(64);

template <rfeh::WeightVector (*MakeWeights)(const rfeh::ChannelRealization&)>
void BM_ClosedFormCombining(benchmark::State& state) {
  const rfeh::ChannelConfig config =
      make_config(static_cast<std::size_t>(state.range(0)));
  const rfeh::ChannelRealization h = rfeh::sample_channel(config, 1, 0);
  for (auto _ : state) {
    const rfeh::WeightVector w = MakeWeights(h);
    benchmark::DoNotOptimize(rfeh::combined_signal_power(h, w));
  }
}
BENCHMARK(BM_ClosedFormCombining<rfeh::weights_sc>)->Arg(8)->Name("BM_CombineSC");
BENCHMARK(BM_ClosedFormCombining<rfeh::weights_egc>)->Arg(8)->Name("BM_CombineEGC");
BENCHMARK(BM_ClosedFormCombining<rfeh::weights_mrc>)->Arg(8)->Name("BM_CombineMRC");

void BM_SolveP2(benchmark::State& state) {
  const rfeh::ChannelConfig config =
      make_config(static_cast<std::size_t>(state.range(0)));
  rfeh::P2Problem problem;
  problem.channel = rfeh::sample_channel(config, 1, 0);
  problem.eta = 0.8;
  problem.transmit_power_w = 2.0;
  // A weight cost near half the harvest slope keeps both objective terms
  // active, which is the slowest regime for the ascent.
  double channel_power = 0.0;
  for (const auto& c : problem.channel.coefficients) {
    channel_power += std::norm(c);
  }
  problem.beta_w = 0.5 * problem.eta * problem.transmit_power_w * channel_power;
  problem.fixed_consumption_w = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfeh::solve_p2(problem).objective_w);
  }
}
BENCHMARK(BM_SolveP2)->Arg(4)->Arg(16);

void BM_Sweep(benchmark::State& state) {
  const rfeh::ExperimentSpec spec =
      make_spec(static_cast<std::size_t>(state.range(0)), 10000);
  const unsigned threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfeh::run_sweep(spec, threads).points.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(spec.trials));
}
BENCHMARK(BM_Sweep)
    ->Args({2, 1})
    ->Args({8, 1})
    ->Args({2, 0})
    ->Args({8, 0})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
