#include <benchmark/benchmark.h>

#include "issgd/descent.hpp"
#include "issgd/fixtures.hpp"
#include "issgd/landscape.hpp"
#include "issgd/lyapunov.hpp"

using namespace issgd;

namespace {

PlantSample sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return random_plant(n, std::max<std::size_t>(1, n / 2), 42);
}

void BM_SolveLyapunov(benchmark::State& state) {
  const PlantSample s = sample(state);
  const Matrix closed = s.plant.closed_loop(s.K0.K);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(closed, s.plant.Q));
}
BENCHMARK(BM_SolveLyapunov)->DenseRange(2, 8, 2);

void BM_EigRealParts(benchmark::State& state) {
  const PlantSample s = sample(state);
  const Matrix closed = s.plant.closed_loop(s.K0.K);
  for (auto _ : state) benchmark::DoNotOptimize(eig_real_parts(closed));
}
BENCHMARK(BM_EigRealParts)->DenseRange(2, 8, 2);

void BM_KleinmanNewton(benchmark::State& state) {
  const PlantSample s = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(kleinman_newton(s.plant, s.K0.K, 1e-10, 100));
}
BENCHMARK(BM_KleinmanNewton)->DenseRange(2, 8, 2);

void BM_Gradient(benchmark::State& state) {
  const PlantSample s = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(s.plant, s.K0));
}
BENCHMARK(BM_Gradient)->DenseRange(2, 8, 2);

void BM_DescentSteps(benchmark::State& state) {
  const PlantSample s = sample(state);
  const Problem p = make_lqr_problem(s.plant, s.optimum);
  Method m;
  m.kind = static_cast<MethodKind>(state.range(1));
  RunOptions o;
  o.max_iter = 100;
  o.stop_tol = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(run(p, m, PerturbationModel::iid_ball(1e-3, 7), s.K0.K, o));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_DescentSteps)->ArgsProduct({{2, 4, 6}, {0, 1, 2}});

}  // namespace
BENCHMARK_MAIN();
