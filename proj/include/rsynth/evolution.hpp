#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsynth/dataset.hpp"
#include "rsynth/evaluator.hpp"
#include "rsynth/operators.hpp"
#include "rsynth/rewrite.hpp"
#include "rsynth/rng.hpp"

namespace rsynth {

/// Covered examples out of the deduplicated E+ and E++ union.
struct Fitness {
  std::size_t covered = 0;
  std::size_t total = 0;

  double value() const { return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total); }
  bool perfect() const { return total > 0 && covered == total; }

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

/// Evaluates covering factors against one dataset. Thread-safe; results are
/// memoized by program text.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const Dataset& d, EvalBudget budget);

  Fitness evaluate(const Program& p) const;
  /// Per-example status, in the order of Dataset::all_examples().
  std::vector<DeductionStatus> statuses(const Program& p) const;

  const std::vector<Example>& examples() const { return examples_; }
  std::size_t cache_size() const;

 private:
  std::shared_ptr<const RuleBase> base_;
  std::vector<Example> examples_;
  std::vector<std::pair<CompiledGround, CompiledGround>> compiled_;
  EvalBudget budget_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::size_t> cache_;
};

/// Fraction of E+ and E++ deduced by p with the dataset's background.
Fitness covering_factor(const Program& p, const Dataset& d, EvalBudget budget = {});

enum class Algorithm { Haea, Gp };
const char* to_string(Algorithm a);

/// How one child is picked among an operator's offspring.
enum class ChildPolicy { Uniform, Best };
const char* to_string(ChildPolicy c);

struct RunConfig {
  Algorithm algorithm = Algorithm::Haea;
  std::size_t min_population = 500;
  std::size_t max_iterations = 100;
  ProgramLimits limits;
  EvalBudget budget;
  std::size_t gp_max_depth = 2;
  std::uint64_t seed = 1;
  std::size_t tournament_size = 4;
  ChildPolicy child_policy = ChildPolicy::Uniform;
  double rate_floor = 1e-4;
  /// Worker threads for population steps; 1 runs the serial path.
  int threads = 1;
};

/// Throws std::invalid_argument on a zero bound or a bad floor.
void validate(const RunConfig& cfg);

using OperatorRates = std::array<double, kOperatorCount>;

/// Uniform(0,1) draws, floored and normalized.
OperatorRates random_rates(Rng& rng, double floor);
/// Floors every rate, then scales to sum 1.
void normalize_rates(OperatorRates& rates, double floor);
OperatorId roulette(const OperatorRates& rates, Rng& rng);

struct Individual {
  Program program;
  OperatorRates rates{};
  Fitness fitness;
};

/// k uniform draws with replacement; the fittest wins, ties broken uniformly.
std::size_t tournament_select(const std::vector<Individual>& pop, std::size_t k, Rng& rng);

struct StepResult {
  Individual next;
  OperatorId op = OperatorId::GlobalXover;
  bool improved = false;
  bool applied = false;
};

/// One adaptive step for pop[index]: pick an operator by the individual's
/// rates, produce one child, keep it only if strictly fitter, and reward or
/// punish the operator by a random learning rate.
StepResult haea_step(const std::vector<Individual>& pop, std::size_t index, const FitnessEvaluator& fitness,
                     const OperatorContext& ctx, const RunConfig& cfg, Rng& rng);

/// One baseline step: gp_xover or gp_mutation with equal chance; the child
/// replaces the parent only if strictly fitter.
StepResult gp_step(const std::vector<Individual>& pop, std::size_t index, const FitnessEvaluator& fitness,
                   const OperatorContext& ctx, const RunConfig& cfg, Rng& rng);

struct IterationStats {
  std::size_t best_covered = 0;
  double mean_fitness = 0.0;
  std::size_t improvements = 0;
};

struct OperatorStats {
  std::size_t selected = 0;
  std::size_t applied = 0;
  std::size_t improved = 0;
  double final_mean_rate = 0.0;
};

struct RunReport {
  Algorithm algorithm = Algorithm::Haea;
  std::string problem;
  std::uint64_t seed = 0;
  std::size_t population = 0;
  bool success = false;
  std::size_t iterations = 0;
  Program best;
  Fitness best_fitness;
  /// Entry 0 describes the initial population, entry i the population after
  /// iteration i.
  std::vector<IterationStats> trajectory;
  std::array<OperatorStats, kOperatorCount> operators{};
  double wall_seconds = 0.0;
};

/// Runs the configured algorithm. The report is a pure function of the
/// arguments, whatever the thread count (wall time aside).
RunReport run(const Dataset& d, const RunConfig& cfg, const std::string& problem_name = "");
RunReport run_haea(const Dataset& d, const RunConfig& cfg, const std::string& problem_name = "");
RunReport run_gp(const Dataset& d, const RunConfig& cfg, const std::string& problem_name = "");

}  // namespace rsynth
