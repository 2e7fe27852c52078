// Microbenchmarks for the hot paths: one Coleman update, policy evaluation,
// the moment-matrix build, and the spectral radius.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>

#include "savings/asymptotics.hpp"
#include "savings/grid.hpp"
#include "savings/model.hpp"
#include "savings/policy.hpp"
#include "savings/spectral.hpp"
#include "savings/time_iteration.hpp"

namespace {

savings::StochasticPrimitives two_state_primitives() {
  savings::StochasticPrimitives prims;
  prims.num_states = 2;
  prims.P = savings::Matrix(2);
  prims.P(0, 0) = 0.9;
  prims.P(0, 1) = 0.1;
  prims.P(1, 0) = 0.4;
  prims.P(1, 1) = 0.6;
  prims.shocks.weights = {0.5, 0.5};
  prims.beta_tab = savings::Tensor3(2, 2, 2, 0.9);
  prims.R_tab = savings::Tensor3(2, 2, 2, 0.0);
  prims.Y_tab = savings::Tensor3(2, 2, 2, 0.0);
  for (std::size_t z = 0; z < 2; ++z)
    for (std::size_t zh = 0; zh < 2; ++zh)
      for (std::size_t k = 0; k < 2; ++k) {
        prims.R_tab(z, zh, k) = k == 0 ? 1.00 : 1.04;
        prims.Y_tab(z, zh, k) = zh == 0 ? 1.0 : 1.5;
      }
  return prims;
}

savings::Preferences bench_prefs() {
  savings::Preferences prefs;
  prefs.gamma = 2.0;
  prefs.delta = 3.0;
  prefs.psi = 1.0;
  return prefs;
}

void BM_TimeIterationStep(benchmark::State& state) {
  const auto prims = two_state_primitives();
  const auto prefs = bench_prefs();
  const auto grid =
      savings::WealthGrid::log_spaced(1e-3, 100.0, static_cast<std::size_t>(state.range(0)));
  auto pol = savings::ConsumptionPolicy::consume_all(grid, prims.num_states);
  for (auto _ : state) {
    pol = savings::time_iteration_step(pol, prims, prefs);
    benchmark::DoNotOptimize(pol.values.data());
  }
}
BENCHMARK(BM_TimeIterationStep)->Arg(200)->Arg(1000);

void BM_SolvePolicy(benchmark::State& state) {
  const auto prims = two_state_primitives();
  const auto prefs = bench_prefs();
  const auto grid = savings::WealthGrid::log_spaced(1e-3, 100.0, 200);
  for (auto _ : state) {
    const auto result = savings::solve_policy(prims, prefs, grid, 1e-8, 2000);
    benchmark::DoNotOptimize(result.diagnostics.iterations);
  }
}
BENCHMARK(BM_SolvePolicy)->Unit(benchmark::kMillisecond);

void BM_EvalPolicy(benchmark::State& state) {
  const auto grid = savings::WealthGrid::log_spaced(1e-3, 100.0, 1000);
  const auto pol = savings::ConsumptionPolicy::consume_all(grid, 2);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> draw(5e-4, 200.0);
  for (auto _ : state) {
    const double c = savings::eval_policy(pol, draw(gen), 1);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_EvalPolicy);

void BM_MomentMatrix(benchmark::State& state) {
  const auto prims = two_state_primitives();
  for (auto _ : state) {
    const auto moments = savings::discount_return_moments(prims, -1.0);
    benchmark::DoNotOptimize(moments.entries.data().data());
  }
}
BENCHMARK(BM_MomentMatrix);

void BM_SpectralRadius(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> draw(0.0, 1.0);
  savings::Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = draw(gen);
  for (auto _ : state) {
    const double r = savings::spectral_radius(a);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SpectralRadius)->Arg(2)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
