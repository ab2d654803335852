// Microbenchmarks for the hot paths: tensor evaluation, action selection,
// and the per-iteration cost of the learning processes. Shapes are indexed
// as (players, actions per player).
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ecfp/dynamics.hpp"
#include "ecfp/game.hpp"
#include "ecfp/generator.hpp"
#include "ecfp/partition.hpp"
#include "ecfp/rng.hpp"
#include "ecfp/schedules.hpp"

namespace {

ecfp::GeneratedGame make_instance(int players, int actions) {
  ecfp::GeneratorSpec spec;
  spec.kind = ecfp::GeneratorSpec::Kind::random_identical;
  spec.action_counts = std::vector<int>(static_cast<std::size_t>(players),
                                        actions);
  spec.seed = 42;
  return ecfp::generate_game(spec);
}

ecfp::JointMixedStrategy interior_point(const ecfp::Game& game) {
  ecfp::JointMixedStrategy p;
  for (int i = 0; i < game.num_players(); ++i) {
    const int m = game.num_actions(i);
    p.emplace_back(static_cast<std::size_t>(m), 1.0 / m);
  }
  return p;
}

void shape_args(benchmark::internal::Benchmark* b) {
  b->Args({3, 2})->Args({4, 3})->Args({5, 3})->Args({5, 4});
}

void BM_MixedUtility(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ecfp::JointMixedStrategy p = interior_point(gg.game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecfp::mixed_utility(gg.game, p));
  }
}
BENCHMARK(BM_MixedUtility)->Apply(shape_args);

void BM_PayoffVector(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ecfp::JointMixedStrategy p = interior_point(gg.game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecfp::payoff_vector(gg.game, 0, p));
  }
}
BENCHMARK(BM_PayoffVector)->Apply(shape_args);

void BM_Centroid(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ecfp::Partition part =
      ecfp::Partition::single_class(gg.game.num_players());
  ecfp::JointMixedStrategy p = interior_point(gg.game);
  p[0][0] += 1e-3;  // break class constancy so the average is computed
  p[0][1] -= 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecfp::centroid(part, p));
  }
}
BENCHMARK(BM_Centroid)->Apply(shape_args);

void BM_SelectUniformEps(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ecfp::JointMixedStrategy p = interior_point(gg.game);
  ecfp::RngStreams rng(7, gg.game.num_players());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecfp::select_action(
        gg.game, p, 0.1, ecfp::SelectionVariant::uniform_eps, rng));
  }
}
BENCHMARK(BM_SelectUniformEps)->Apply(shape_args);

void BM_EcfpStep(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const ecfp::StepSizeSchedule gamma = ecfp::StepSizeSchedule::classical();
  const ecfp::EpsilonSchedule eps = ecfp::EpsilonSchedule::power(1.0, 1.0);
  ecfp::SelectionMode mode;
  mode.variant = ecfp::SelectionVariant::uniform_eps;
  ecfp::RngStreams rng(7, gg.game.num_players());
  ecfp::ProcessState s = ecfp::ecfp_initial_state(
      gg.game, gg.partition, ecfp::initial_action_zero(gg.game));
  for (auto _ : state) {
    s = ecfp::ecfp_step(gg.game, gg.partition, s, gamma, eps, mode, rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EcfpStep)->Apply(shape_args);

void BM_EulerStep(benchmark::State& state) {
  const ecfp::GeneratedGame gg = make_instance(
      static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  ecfp::ProcessState s = ecfp::ecfp_initial_state(
      gg.game, gg.partition, ecfp::initial_action_zero(gg.game));
  for (auto _ : state) {
    s = ecfp::euler_flow_step(gg.game, gg.partition, s, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EulerStep)->Apply(shape_args);

}  // namespace

BENCHMARK_MAIN();
