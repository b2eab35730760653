#include <benchmark/benchmark.h>

#include "swarmagg/analysis.hpp"
#include "swarmagg/dynamics.hpp"
#include "swarmagg/harness.hpp"

namespace {

swarmagg::ExperimentConfig p1_like(std::size_t agents, std::size_t dim) {
  swarmagg::ExperimentSettings s;
  s.a = 0.01;
  s.b = 0.5;
  s.c = 1.0;
  s.agents = agents;
  s.dim = dim;
  s.seed = 1;
  s.half_width = 5.0;
  return swarmagg::make_config(s);
}

void BM_Step(benchmark::State& state) {
  const auto config = p1_like(static_cast<std::size_t>(state.range(0)), 2);
  auto swarm = swarmagg::init_positions(config);
  for (auto _ : state) {
    auto next = swarmagg::step(swarm, config.params);
    benchmark::DoNotOptimize(next);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Step)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNSquared);

void BM_Simulate1000(benchmark::State& state) {
  const auto config = p1_like(static_cast<std::size_t>(state.range(0)), 2);
  const auto initial = swarmagg::init_positions(config);
  swarmagg::StopCriteria stop;
  stop.residual_threshold = 0.0;
  for (auto _ : state) {
    auto traj = swarmagg::simulate(initial, config.params, 1000, stop);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_Simulate1000)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const auto config = p1_like(static_cast<std::size_t>(state.range(0)), 2);
  swarmagg::StopCriteria stop;
  stop.residual_threshold = 0.0;
  const auto traj = swarmagg::simulate(swarmagg::init_positions(config), config.params, 1000, stop);
  for (auto _ : state) {
    auto report = swarmagg::analyze(traj);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_Analyze)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_PsiMax(benchmark::State& state) {
  const auto params = swarmagg::SwarmParams::create(0.01, 0.5, 1.0, 10, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swarmagg::psi_max_check(params, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_PsiMax)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
