#include <benchmark/benchmark.h>

#include "dmimo/combining.hpp"
#include "dmimo/grouping.hpp"
#include "dmimo/montecarlo.hpp"
#include "dmimo/realization.hpp"
#include "dmimo/sedecode.hpp"

namespace {

using namespace dmimo;

ScenarioConfig config(int num_aps, int num_ues, int num_pilots) {
  ScenarioConfig cfg;
  cfg.num_aps = num_aps;
  cfg.num_ues = num_ues;
  cfg.num_pilots = num_pilots;
  return cfg;
}

// One AP's PGA solve; argument is T.
void BM_PgaSingleAp(benchmark::State& state) {
  const Network net = make_network(config(20, static_cast<int>(state.range(0)), 5), 0);
  const LocalSinrModel model(LocalApStats::from_network(net, 0), SinrForm::kPFZF);
  const PgaConfig pga;
  for (auto _ : state) benchmark::DoNotOptimize(pga_optimize(model, pga));
}
BENCHMARK(BM_PgaSingleAp)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_GroupingWholeNetwork(benchmark::State& state) {
  const Network net = make_network(config(static_cast<int>(state.range(0)), 100, 7), 0);
  const PgaConfig pga;
  for (auto _ : state) benchmark::DoNotOptimize(make_grouping(net, Scheme::kGPWPFZF, pga));
}
BENCHMARK(BM_GroupingWholeNetwork)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BuildCombiners(benchmark::State& state) {
  const Network net = make_network(config(20, 10, 5), 0);
  const GroupingMatrix g = make_grouping(net, Scheme::kGPWPFZF, PgaConfig{});
  auto rng = RngStream::derive(1, StreamPurpose::kTrial, 0);
  const ChannelRealization real = draw_realization(net, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_combiners(real, net.stats.theta, g, SinrForm::kPWPFZF));
  }
}
BENCHMARK(BM_BuildCombiners)->Unit(benchmark::kMicrosecond);

void BM_DrawRealization(benchmark::State& state) {
  const Network net = make_network(config(20, 10, 5), 0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto rng = RngStream::derive(1, StreamPurpose::kTrial, i++);
    benchmark::DoNotOptimize(draw_realization(net, rng));
  }
}
BENCHMARK(BM_DrawRealization)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormReport(benchmark::State& state) {
  const auto arch = static_cast<Architecture>(state.range(0));
  const Network net = make_network(config(100, 100, 7), 0);
  const GroupingMatrix g = make_grouping(net, Scheme::kGPFZF, PgaConfig{});
  for (auto _ : state) {
    const WeightMatrix w = make_weights(net, g, SinrForm::kPFZF, arch);
    benchmark::DoNotOptimize(closed_form_report(w, net, g, SinrForm::kPFZF));
  }
  state.SetLabel(std::string(to_string(arch)));
}
BENCHMARK(BM_ClosedFormReport)
    ->Arg(static_cast<int>(Architecture::kLocal))
    ->Arg(static_cast<int>(Architecture::kOlsfd))
    ->Unit(benchmark::kMillisecond);

// Monte Carlo cost per trial at desk scale.
void BM_MonteCarloTrials(benchmark::State& state) {
  const Network net = make_network(config(20, 10, 5), 0);
  const GroupingMatrix g = make_grouping(net, Scheme::kGPFZF, PgaConfig{});
  const WeightMatrix w = local_weights(net, g, SinrForm::kPFZF);
  McConfig mc;
  mc.num_trials = 200;
  for (auto _ : state) benchmark::DoNotOptimize(empirical_terms(net, g, SinrForm::kPFZF, w, mc));
  state.SetItemsProcessed(state.iterations() * mc.num_trials);
}
BENCHMARK(BM_MonteCarloTrials)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
