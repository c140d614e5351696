#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "qgames/analysis.hpp"
#include "qgames/channel.hpp"
#include "qgames/engine.hpp"
#include "qgames/random.hpp"

namespace {

using namespace qgames;

GameSpec flip_game(StateVector input) {
  const UnitaryOperator identity = UnitaryOperator::identity(2);
  const UnitaryOperator flip(CMatrix({{0, 1}, {1, 0}}));
  std::vector<NamedOperator> alice{{"I", identity, OpScope::kLocalA},
                                   {"F", flip, OpScope::kLocalA}};
  std::vector<NamedOperator> bob{{"I", identity, OpScope::kLocalB},
                                 {"F", flip, OpScope::kLocalB}};
  return GameSpec(2, 2, std::move(input), std::move(alice), std::move(bob),
                  MeasurementBasis::computational(2, 2), prisoners_dilemma_outcomes());
}

StateVector entangled_input() {
  return StateVector::normalized(
      {Complex{std::sqrt(3.0 / 5.0), 0.0}, {}, {}, Complex{std::sqrt(2.0 / 5.0), 0.0}});
}

GameSpec random_joint_game(std::mt19937_64& rng) {
  std::vector<NamedOperator> alice{{"a0", random_unitary(4, rng), OpScope::kJoint},
                                   {"a1", random_unitary(4, rng), OpScope::kJoint}};
  std::vector<NamedOperator> bob{{"b0", random_unitary(4, rng), OpScope::kJoint},
                                 {"b1", random_unitary(4, rng), OpScope::kJoint}};
  return GameSpec(2, 2, random_state(4, rng), std::move(alice), std::move(bob),
                  MeasurementBasis::computational(2, 2), random_outcomes(4, rng));
}

void BM_expected_payoffs(benchmark::State& state) {
  const GameSpec spec = flip_game(entangled_input());
  for (auto _ : state) benchmark::DoNotOptimize(expected_payoffs(spec));
}
BENCHMARK(BM_expected_payoffs);

void BM_expected_payoffs_random_joint(benchmark::State& state) {
  std::mt19937_64 rng(12345);
  const GameSpec spec = random_joint_game(rng);
  for (auto _ : state) benchmark::DoNotOptimize(expected_payoffs(spec));
}
BENCHMARK(BM_expected_payoffs_random_joint);

void BM_channel_from_game(benchmark::State& state) {
  std::mt19937_64 rng(777);
  const GameSpec spec = random_joint_game(rng);
  for (auto _ : state) benchmark::DoNotOptimize(channel_from_game(spec));
}
BENCHMARK(BM_channel_from_game);

void BM_region_analysis(benchmark::State& state) {
  const ParametricFamily family(flip_game(entangled_input()), "00", "11");
  for (auto _ : state) benchmark::DoNotOptimize(region_analysis(family));
}
BENCHMARK(BM_region_analysis);

void BM_sweep_epsilon(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sweep_epsilon(ProfileRule::kPrescribed, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_sweep_epsilon)->Arg(101)->Arg(1001);

void BM_random_unitary(benchmark::State& state) {
  std::mt19937_64 rng(42);
  for (auto _ : state) benchmark::DoNotOptimize(random_unitary(4, rng));
}
BENCHMARK(BM_random_unitary);

}  // namespace

BENCHMARK_MAIN();
