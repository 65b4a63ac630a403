#include <benchmark/benchmark.h>

#include <random>

#include "jrc/coordinator.hpp"
#include "jrc/generators.hpp"
#include "jrc/lpfeas.hpp"
#include "jrc/subproblem.hpp"
#include "jrc/verify_oracle.hpp"

namespace {

jrc::Instance benchmark_instance() {
  jrc::Example1Options o;
  o.travel = jrc::example1_default_travel();
  return jrc::example1(o);
}

void BM_ExactSubproblemExample1(benchmark::State& state) {
  const auto inst = benchmark_instance();
  const jrc::CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  lambda[0] = -2.0;
  lambda[1] = -2.0;
  jrc::SearchOptions search;
  search.bounding = state.range(0) != 0;
  const auto pricing = jrc::dual_pricing(inst, 0, lambda);
  std::int64_t labels = 0;
  for (auto _ : state) {
    const auto r = jrc::solve_exact(inst, 0, pricing, search);
    labels = r.labels;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["labels"] = static_cast<double>(labels);
}
BENCHMARK(BM_ExactSubproblemExample1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DualBoundExample1(benchmark::State& state) {
  const auto inst = benchmark_instance();
  const jrc::CouplingLayout layout(inst);
  const std::vector<double> lambda(static_cast<std::size_t>(layout.size()), -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(jrc::dual_lower_bound(inst, lambda).value);
}
BENCHMARK(BM_DualBoundExample1)->Unit(benchmark::kMillisecond);

void BM_SlblrIterationsExample1(benchmark::State& state) {
  const auto inst = benchmark_instance();
  jrc::Config config;
  config.max_iterations = static_cast<int>(state.range(0));
  config.final_dual_bound = false;
  config.stationary_iterations = 0;
  for (auto _ : state) benchmark::DoNotOptimize(jrc::run(inst, config).best_cost);
}
BENCHMARK(BM_SlblrIterationsExample1)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_OracleContendedDetour(benchmark::State& state) {
  const auto inst = jrc::contended_detour_case();
  for (auto _ : state) benchmark::DoNotOptimize(jrc::brute_force_optimum(inst).cost);
}
BENCHMARK(BM_OracleContendedDetour)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_DivergenceWindow(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<std::vector<double>> window(30, std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  for (std::size_t i = 1; i < window.size(); ++i) {
    for (int d = 0; d < dim; ++d) window[i][static_cast<std::size_t>(d)] = window[i - 1][static_cast<std::size_t>(d)] + step(rng);
  }
  const auto system = jrc::linearize_window(window);
  for (auto _ : state) benchmark::DoNotOptimize(jrc::is_feasible(system).feasible);
}
BENCHMARK(BM_DivergenceWindow)->Arg(10)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
