#include "rsynth/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "rsynth/generalize.hpp"
#include "rsynth/syntax.hpp"

namespace rsynth {

FitnessEvaluator::FitnessEvaluator(const Dataset& d, EvalBudget budget)
    : examples_(d.all_examples()), budget_(budget) {
  std::vector<Term> vocabulary;
  for (const Example& e : examples_) {
    vocabulary.push_back(e.lhs);
    vocabulary.push_back(e.rhs);
  }
  base_ = std::make_shared<const RuleBase>(d.background, vocabulary);
  for (const Example& e : examples_) {
    compiled_.emplace_back(compile_ground(e.lhs, base_->symbols()), compile_ground(e.rhs, base_->symbols()));
  }
}

Fitness FitnessEvaluator::evaluate(const Program& p) const {
  const std::string key = print_program(p);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return Fitness{it->second, examples_.size()};
  }
  const Evaluator ev(base_, p);
  std::size_t covered = 0;
  for (const auto& [lhs, rhs] : compiled_) {
    if (ev.check(lhs, rhs, budget_) == DeductionStatus::Deduced) ++covered;
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(key, covered);
  return Fitness{covered, examples_.size()};
}

std::vector<DeductionStatus> FitnessEvaluator::statuses(const Program& p) const {
  const Evaluator ev(base_, p);
  std::vector<DeductionStatus> out;
  for (const auto& [lhs, rhs] : compiled_) out.push_back(ev.check(lhs, rhs, budget_));
  return out;
}

std::size_t FitnessEvaluator::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

Fitness covering_factor(const Program& p, const Dataset& d, EvalBudget budget) {
  return FitnessEvaluator(d, budget).evaluate(p);
}

const char* to_string(Algorithm a) { return a == Algorithm::Haea ? "haea" : "gp"; }
const char* to_string(ChildPolicy c) { return c == ChildPolicy::Uniform ? "uniform" : "best"; }

void validate(const RunConfig& cfg) {
  auto positive = [](std::size_t v, const char* what) {
    if (v == 0) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  positive(cfg.min_population, "population size");
  positive(cfg.limits.max_equation_nodes, "equation node limit");
  positive(cfg.limits.max_basic_equations, "basic equation limit");
  positive(cfg.limits.max_recursive_equations, "recursive equation limit");
  positive(cfg.budget.max_rewrite_steps, "rewrite step limit");
  positive(cfg.budget.max_redex_searches, "redex search limit");
  positive(cfg.gp_max_depth, "tree depth");
  positive(cfg.tournament_size, "tournament size");
  if (!(cfg.rate_floor > 0.0 && cfg.rate_floor < 1.0 / kOperatorCount)) {
    throw std::invalid_argument("rate floor must lie in (0, 1/9)");
  }
  if (cfg.threads < 1) throw std::invalid_argument("thread count must be positive");
}

void normalize_rates(OperatorRates& rates, double floor) {
  for (double& r : rates) r = std::max(r, floor);
  const double sum = std::accumulate(rates.begin(), rates.end(), 0.0);
  for (double& r : rates) r /= sum;
}

OperatorRates random_rates(Rng& rng, double floor) {
  OperatorRates rates{};
  for (double& r : rates) r = rng.uniform01();
  normalize_rates(rates, floor);
  return rates;
}

OperatorId roulette(const OperatorRates& rates, Rng& rng) {
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  double x = rng.uniform01() * total;
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    if (x < rates[i]) return kAllOperators[i];
    x -= rates[i];
  }
  return kAllOperators[kOperatorCount - 1];
}

std::size_t tournament_select(const std::vector<Individual>& pop, std::size_t k, Rng& rng) {
  if (pop.empty()) throw std::invalid_argument("tournament over an empty population");
  std::vector<std::size_t> best;
  for (std::size_t draw = 0; draw < std::max<std::size_t>(k, 1); ++draw) {
    const std::size_t i = rng.index(pop.size());
    if (best.empty() || pop[i].fitness.covered > pop[best.front()].fitness.covered) {
      best.assign(1, i);
    } else if (pop[i].fitness.covered == pop[best.front()].fitness.covered) {
      best.push_back(i);
    }
  }
  return best.size() == 1 ? best.front() : best[rng.index(best.size())];
}

namespace {

struct Child {
  Program program;
  Fitness fitness;
};

Child choose_child(OperatorOutcome& out, const Individual& parent, const FitnessEvaluator& fitness,
                   ChildPolicy policy, Rng& rng) {
  if (!out.applied) return Child{parent.program, parent.fitness};
  if (policy == ChildPolicy::Uniform) {
    Program& p = out.offspring[rng.index(out.offspring.size())];
    const Fitness f = fitness.evaluate(p);
    return Child{std::move(p), f};
  }
  std::size_t best = 0;
  Fitness best_fitness = fitness.evaluate(out.offspring[0]);
  for (std::size_t i = 1; i < out.offspring.size(); ++i) {
    const Fitness f = fitness.evaluate(out.offspring[i]);
    if (f.covered > best_fitness.covered) {
      best = i;
      best_fitness = f;
    }
  }
  return Child{std::move(out.offspring[best]), best_fitness};
}

}  // namespace

StepResult haea_step(const std::vector<Individual>& pop, std::size_t index, const FitnessEvaluator& fitness,
                     const OperatorContext& ctx, const RunConfig& cfg, Rng& rng) {
  const Individual& parent = pop.at(index);
  StepResult r;
  r.op = roulette(parent.rates, rng);
  const Program& mate = needs_mate(r.op) ? pop[tournament_select(pop, cfg.tournament_size, rng)].program
                                         : parent.program;
  OperatorOutcome out = apply_operator(r.op, parent.program, mate, ctx, rng);
  r.applied = out.applied;
  Child child = choose_child(out, parent, fitness, cfg.child_policy, rng);
  const double lr = rng.uniform01();
  r.improved = child.fitness.covered > parent.fitness.covered;
  r.next = r.improved ? Individual{std::move(child.program), parent.rates, child.fitness} : parent;
  double& rate = r.next.rates[static_cast<std::size_t>(r.op)];
  rate *= r.improved ? 1.0 + lr : 1.0 - lr;
  normalize_rates(r.next.rates, cfg.rate_floor);
  return r;
}

StepResult gp_step(const std::vector<Individual>& pop, std::size_t index, const FitnessEvaluator& fitness,
                   const OperatorContext& ctx, const RunConfig& cfg, Rng& rng) {
  const Individual& parent = pop.at(index);
  StepResult r;
  r.op = rng.coin(0.5) ? OperatorId::GpXover : OperatorId::GpMutation;
  const Program& mate = r.op == OperatorId::GpXover ? pop[tournament_select(pop, cfg.tournament_size, rng)].program
                                                    : parent.program;
  OperatorOutcome out = apply_operator(r.op, parent.program, mate, ctx, rng);
  r.applied = out.applied;
  Child child = choose_child(out, parent, fitness, cfg.child_policy, rng);
  r.improved = child.fitness.covered > parent.fitness.covered;
  r.next = r.improved ? Individual{std::move(child.program), parent.rates, child.fitness} : parent;
  return r;
}

namespace {

// Applies fn(i) for every index, serially or on cfg.threads OpenMP workers.
// Exceptions are rethrown on the calling thread.
template <typename Fn>
void for_each_index(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(rsynth_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

IterationStats summarize(const std::vector<Individual>& pop, std::size_t improvements) {
  IterationStats s;
  double sum = 0.0;
  for (const Individual& ind : pop) {
    s.best_covered = std::max(s.best_covered, ind.fitness.covered);
    sum += ind.fitness.value();
  }
  s.mean_fitness = pop.empty() ? 0.0 : sum / static_cast<double>(pop.size());
  s.improvements = improvements;
  return s;
}

using StepFn = StepResult (*)(const std::vector<Individual>&, std::size_t, const FitnessEvaluator&,
                              const OperatorContext&, const RunConfig&, Rng&);

RunReport evolve(const Dataset& d, const RunConfig& cfg, const std::string& problem_name, StepFn step) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const FitnessEvaluator fitness(d, cfg.budget);
  const OperatorContext ctx = make_operator_context(d, cfg.limits, cfg.gp_max_depth);

  Rng init = Rng::derive(cfg.seed, 0, 0);
  std::vector<Program> programs = initial_population(d, cfg.min_population, init);
  std::vector<Individual> pop(programs.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop[i].program = std::move(programs[i]);
    pop[i].rates = random_rates(init, cfg.rate_floor);
  }
  for_each_index(pop.size(), cfg.threads, [&](std::size_t i) { pop[i].fitness = fitness.evaluate(pop[i].program); });

  RunReport report;
  report.algorithm = cfg.algorithm;
  report.problem = problem_name;
  report.seed = cfg.seed;
  report.population = pop.size();
  report.trajectory.push_back(summarize(pop, 0));

  const std::size_t total = fitness.examples().size();
  std::vector<StepResult> results(pop.size());
  for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (report.trajectory.back().best_covered == total) break;
    for_each_index(pop.size(), cfg.threads, [&](std::size_t i) {
      Rng rng = Rng::derive(cfg.seed, iter, i);
      results[i] = step(pop, i, fitness, ctx, cfg, rng);
    });
    std::size_t improvements = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      OperatorStats& s = report.operators[static_cast<std::size_t>(results[i].op)];
      ++s.selected;
      s.applied += results[i].applied ? 1 : 0;
      s.improved += results[i].improved ? 1 : 0;
      improvements += results[i].improved ? 1 : 0;
      pop[i] = std::move(results[i].next);
    }
    report.iterations = iter;
    report.trajectory.push_back(summarize(pop, improvements));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (pop[i].fitness.covered > pop[best].fitness.covered) best = i;
  }
  report.best = pop[best].program;
  report.best_fitness = pop[best].fitness;
  report.success = report.best_fitness.perfect();
  if (cfg.algorithm == Algorithm::Haea) {
    for (std::size_t k = 0; k < kOperatorCount; ++k) {
      double sum = 0.0;
      for (const Individual& ind : pop) sum += ind.rates[k];
      report.operators[k].final_mean_rate = sum / static_cast<double>(pop.size());
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

RunReport run_haea(const Dataset& d, const RunConfig& cfg, const std::string& problem_name) {
  RunConfig c = cfg;
  c.algorithm = Algorithm::Haea;
  return evolve(d, c, problem_name, &haea_step);
}

RunReport run_gp(const Dataset& d, const RunConfig& cfg, const std::string& problem_name) {
  RunConfig c = cfg;
  c.algorithm = Algorithm::Gp;
  return evolve(d, c, problem_name, &gp_step);
}

RunReport run(const Dataset& d, const RunConfig& cfg, const std::string& problem_name) {
  return cfg.algorithm == Algorithm::Haea ? run_haea(d, cfg, problem_name) : run_gp(d, cfg, problem_name);
}

}  // namespace rsynth
