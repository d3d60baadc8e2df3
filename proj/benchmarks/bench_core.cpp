#include <numbers>

#include <benchmark/benchmark.h>

#include "twirlkey/measures.hpp"
#include "twirlkey/protocol.hpp"
#include "twirlkey/states.hpp"
#include "twirlkey/twirl.hpp"

using namespace twirlkey;

static void BM_DiscordGridOracle(benchmark::State& state) {
  const TwoQubitState rho = random_state(1);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discord_grid_oracle(rho, steps).value);
}
BENCHMARK(BM_DiscordGridOracle)->Arg(16)->Arg(32)->Arg(64);

static void BM_DiscordEigenClosedForm(benchmark::State& state) {
  const TwoQubitState rho = random_state(1);
  for (auto _ : state) benchmark::DoNotOptimize(discord_eigen_closed_form(rho).value);
}
BENCHMARK(BM_DiscordEigenClosedForm);

static void BM_Concurrence(benchmark::State& state) {
  const TwoQubitState rho = random_state(2);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

static void BM_TwirlMonteCarlo(benchmark::State& state) {
  const TwoQubitState rho = pure_state(std::numbers::pi / 3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twirl_monte_carlo(rho, n, 7).trace_distance_to_analytic);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TwirlMonteCarlo)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_SimulateProtocol(benchmark::State& state) {
  const TwoQubitState rho = werner(WernerFidelity(0.75));
  const MinErrorRate opt = min_error_rate(rho);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_protocol(rho, n, 3, opt.b, opt.b_prime).empirical_delta);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateProtocol)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_DiscordBound(benchmark::State& state) {
  const TwoQubitState rho = random_state(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discord_bound(rho, DiscordMethod::kEigenClosedForm).rhs);
  }
}
BENCHMARK(BM_DiscordBound);
BENCHMARK_MAIN();
