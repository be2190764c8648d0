#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rds/cantor.hpp"
#include "rds/cantor_set.hpp"
#include "rds/construct_cantor.hpp"
#include "rds/measure.hpp"
#include "rds/monotone_map.hpp"
#include "rds/monte_carlo.hpp"
#include "rds/random_system.hpp"
#include "rds/stationary_solver.hpp"
#include "rds/transport_plan.hpp"

using namespace rds;

namespace {

RandomSystem s_star() {
  return RandomSystem(MonotoneMap::from_breakpoints({{0, Rational(-1, 2)}, {2, Rational(1, 2)}}),
                      MonotoneMap::from_breakpoints({{-2, Rational(-1, 2)}, {0, Rational(1, 2)}}),
                      Rational(1, 2));
}

AtomicMeasure spread(int n) {
  std::vector<Atom> atoms;
  for (int k = 0; k < n; ++k) atoms.push_back({-3.0 + 6.0 * k / n, 1.0 / n});
  return AtomicMeasure(atoms);
}

void BM_ApplyMarkov(benchmark::State& state) {
  const RandomSystem sys = s_star();
  const AtomicMeasure mu = spread(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_markov(sys, mu));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyMarkov)->Arg(1 << 10)->Arg(1 << 14);

void BM_TransportRefine(benchmark::State& state) {
  const GridCantorSet s{Rational(1), Rational(0)};
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    TransportPlan plan(s, {0, 2}, s, {0, 3});
    plan.refine_to(depth);
    benchmark::DoNotOptimize(plan.bracket(0.5, depth));
  }
}
BENCHMARK(BM_TransportRefine)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_TransportBracket(benchmark::State& state) {
  const GridCantorSet s{Rational(1), Rational(0)};
  TransportPlan plan(s, {0, 2}, s, {0, 3});
  const int depth = static_cast<int>(state.range(0));
  plan.refine_to(depth);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> xs(4096);
  for (double& x : xs) x = u(rng);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(plan.bracket(xs[k++ & 4095], depth));
}
BENCHMARK(BM_TransportBracket)->Arg(8)->Arg(14);

void BM_TransportEvalExact(benchmark::State& state) {
  const GridCantorSet s{Rational(1), Rational(0)};
  TransportPlan plan(s, {0, 2}, s, {0, 3});
  const auto xs = gaps(s, {0, 2}, 5);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(plan.eval_exact(xs[k++ % xs.size()].left, 12));
}
BENCHMARK(BM_TransportEvalExact);

void BM_StationarySolve(benchmark::State& state) {
  const RandomSystem sys = s_star();
  SolverOptions opt;
  opt.tol = 0.005;
  opt.points = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(stationary_solve(sys, opt));
}
BENCHMARK(BM_StationarySolve)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const RandomSystem sys = s_star();
  MonteCarloOptions opt;
  opt.n_samples = state.range(0);
  opt.burn_in = 200;
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_cdf(sys, opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PerturbCantor(benchmark::State& state) {
  const RandomSystem sys = s_star();
  for (auto _ : state) benchmark::DoNotOptimize(perturb_cantor(sys, Rational(1, 10)));
}
BENCHMARK(BM_PerturbCantor)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
