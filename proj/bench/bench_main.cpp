// Serial versus OpenMP population steps, and the reference stepper versus the
// compiled evaluator.

#include <benchmark/benchmark.h>

#include <memory>

#include "rsynth/benchmarks.hpp"
#include "rsynth/evaluator.hpp"
#include "rsynth/evolution.hpp"
#include "rsynth/generalize.hpp"
#include "rsynth/rewrite.hpp"
#include "rsynth/syntax.hpp"

namespace {

using namespace rsynth;

// A short HaEa run; range(0) is the thread count, 1 being the serial path.
void BM_HaeaRun(benchmark::State& state) {
  const Dataset d = builtin_problem("square-trino").dataset;
  RunConfig cfg;
  cfg.min_population = 500;
  cfg.max_iterations = 10;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(run_haea(d, cfg, "square-trino"));
  }
}
BENCHMARK(BM_HaeaRun)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_GpRun(benchmark::State& state) {
  const Dataset d = builtin_problem("square-trino").dataset;
  RunConfig cfg;
  cfg.min_population = 500;
  cfg.max_iterations = 10;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    cfg.seed += 1;
    benchmark::DoNotOptimize(run_gp(d, cfg, "square-trino"));
  }
}
BENCHMARK(BM_GpRun)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

const Term& cube_of_six() {
  static const Term t = parse_term("cube(6)");
  return t;
}

void BM_NormalizeReference(benchmark::State& state) {
  const Program& bk = arithmetic_background();
  const EvalBudget budget{1'000'000, 1'000'000};
  for (auto _ : state) benchmark::DoNotOptimize(normalize_reference(Program{}, bk, cube_of_six(), budget));
}
BENCHMARK(BM_NormalizeReference)->Unit(benchmark::kMicrosecond);

void BM_NormalizeCompiled(benchmark::State& state) {
  const Evaluator ev(std::make_shared<const RuleBase>(arithmetic_background()), Program{});
  const EvalBudget budget{1'000'000, 1'000'000};
  for (auto _ : state) benchmark::DoNotOptimize(ev.normalize(cube_of_six(), budget));
}
BENCHMARK(BM_NormalizeCompiled)->Unit(benchmark::kMicrosecond);

// Per-example checks of a whole initial population, without the memo cache.
void BM_PopulationFitness(benchmark::State& state) {
  const Dataset d = builtin_problem("cube-bino").dataset;
  Rng rng(1);
  const std::vector<Program> pop = initial_population(d, 500, rng);
  const FitnessEvaluator fitness(d, EvalBudget{});
  for (auto _ : state) {
    std::size_t covered = 0;
    for (const Program& p : pop) {
      for (DeductionStatus s : fitness.statuses(p)) covered += s == DeductionStatus::Deduced;
    }
    benchmark::DoNotOptimize(covered);
  }
}
BENCHMARK(BM_PopulationFitness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
