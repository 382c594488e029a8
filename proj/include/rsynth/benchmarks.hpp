#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsynth/dataset.hpp"
#include "rsynth/evolution.hpp"

namespace rsynth {

class UnknownProblem : public std::invalid_argument {
 public:
  explicit UnknownProblem(std::string_view name);
};

struct Problem {
  std::string name;
  std::string description;
  Dataset dataset;
};

/// cube-bino, cube, square-bino, square, square-trino, sum-n, sum-n-square.
const std::vector<std::string>& problem_names();

/// The definitions of sum, prod, double, triple, square and cube.
const Program& arithmetic_background();
/// The arithmetic_background equations of the named functions, in their
/// original order.
Program background_for(const std::vector<std::string>& functions);

/// `cube_extra` adds cube(4) = 64 to the cube problem's E++.
Problem builtin_problem(std::string_view name, bool cube_extra = false);

/// Known solutions of a problem (each covers its whole dataset).
std::vector<Program> solution_oracles(std::string_view name);
/// Background under which the oracles are checked. Equal to the problem's,
/// except that square also gets double.
Program oracle_background(std::string_view name);

/// Five-number summary plus mean and inner fences, with quartiles by linear
/// interpolation between order statistics.
struct Quartiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double lower_fence = 0.0;
  double upper_fence = 0.0;
};

Quartiles quartiles(std::vector<double> values);

struct ProblemResult {
  std::string problem;
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::vector<RunReport> reports;
  std::vector<std::string> errors;  // one per run that threw

  std::size_t failures() const { return runs - successes; }
  double success_percent() const;
};

struct BatchReport {
  Algorithm algorithm = Algorithm::Haea;
  std::uint64_t seed = 0;
  std::size_t runs_per_problem = 0;
  std::vector<ProblemResult> problems;
  double wall_seconds = 0.0;

  /// Over the per-problem success percentages.
  Quartiles summary() const;
};

using RunCallback = std::function<void(const RunReport&)>;

/// runs_per_problem runs per problem; run k uses seed cfg.seed + k.
BatchReport run_batch(const std::vector<std::string>& problems, const RunConfig& cfg, std::size_t runs_per_problem,
                      bool cube_extra = false, const RunCallback& on_run = {});

}  // namespace rsynth
