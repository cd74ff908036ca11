#include <benchmark/benchmark.h>

#include "ringgyro/fisher.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/propagator.hpp"

using namespace ringgyro;

namespace {

void BM_FreeStep(benchmark::State& state) {
  const auto grid = make_grid(static_cast<std::size_t>(state.range(0)), 1.0);
  auto psi = initial_state_kandes(grid, 0.5, 20.0);
  SplitStepPropagator prop(grid, PotentialSpec::free(), 0.0, 0.0, 1e-4);
  double t = 0.0;
  for (auto _ : state) {
    prop.step(psi, t);
    t += 1e-4;
    benchmark::DoNotOptimize(psi.amps().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FreeStep)->Arg(1024)->Arg(2048);

void BM_InteractingMovingTrapStep(benchmark::State& state) {
  const auto grid = make_grid(static_cast<std::size_t>(state.range(0)), 5.0);
  auto psi = gaussian_packet(grid, 0.0, 0.2, 0.0);
  SplitStepPropagator prop(grid, PotentialSpec::harmonic(1.0, SinusoidalProfile{5.0, 1.0}), 0.0,
                           0.2, 1e-3);
  double t = 0.0;
  for (auto _ : state) {
    prop.step(psi, t);
    t += 1e-3;
    benchmark::DoNotOptimize(psi.amps().data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_InteractingMovingTrapStep)->Arg(1024)->Arg(2048);

void BM_Estimators(benchmark::State& state) {
  const auto grid = make_grid(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto psi0 = initial_state_kandes(grid, 0.5, 20.0);
  const double t = 0.15;
  const auto psi = evolve_free_exact(psi0, 0.0, t);
  const auto dpsi = scaled_difference(evolve_free_exact(psi0, 1e-3, t),
                                      evolve_free_exact(psi0, -1e-3, t), 500.0);
  for (auto _ : state) {
    const double fq = qfi(psi, dpsi);
    const auto p = density(psi);
    const auto dp = density_derivative(psi, dpsi);
    const auto fc = cfi_density(p, dp, *grid);
    const auto flr = cfi_left_right(p, dp, *grid);
    benchmark::DoNotOptimize(fq + fc.value + flr.value);
  }
}
BENCHMARK(BM_Estimators)->Arg(1024)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
