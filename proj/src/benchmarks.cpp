#include "rsynth/benchmarks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "rsynth/syntax.hpp"

namespace rsynth {

UnknownProblem::UnknownProblem(std::string_view name)
    : std::invalid_argument("unknown problem '" + std::string(name) + "'") {}

namespace {

constexpr std::string_view kArithmetic = R"(
sum(N,0) = N
sum(N,s(M)) = s(sum(N,M))
prod(N,0) = 0
prod(N,s(M)) = sum(prod(N,M),N)
double(0) = 0
double(s(N)) = s(s(double(N)))
triple(0) = 0
triple(s(N)) = s(s(s(triple(N))))
square(0) = 0
square(s(N)) = sum(square(N),sum(s(N),N))
cube(0) = 0
cube(s(N)) = s(sum(cube(N),triple(sum(square(N),N))))
)";

struct Spec {
  std::string_view name;
  std::string_view description;
  std::vector<std::string_view> basic;
  std::vector<std::string_view> extra;
  std::vector<std::string> background;
  std::vector<std::string_view> solutions;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {"cube-bino",
       "cube of a binomial",
       {"cube_bino(0,0) = 0"},
       {"cube_bino(1,0) = 1", "cube_bino(0,1) = 1", "cube_bino(1,1) = 8", "cube_bino(2,0) = 8", "cube_bino(0,2) = 8"},
       {"sum", "prod", "triple", "square", "cube"},
       {"cube_bino(A,B) = cube(sum(A,B))",
        "cube_bino(A,B) = sum(prod(sum(sum(prod(A,A),prod(B,B)),sum(prod(B,A),prod(A,B))),B),"
        "prod(A,sum(sum(prod(B,A),prod(B,A)),sum(prod(B,B),prod(A,A)))))"}},
      {"cube",
       "cube of the successor of a natural number",
       {"cube(0) = 0", "cube(1) = 1"},
       {"cube(2) = 8", "cube(3) = 27"},
       {"sum", "triple", "square"},
       {"cube(0) = 0; cube(s(A)) = sum(triple(sum(square(A),A)),s(cube(A)))",
        "cube(s(A)) = sum(sum(sum(triple(square(A)),s(A)),sum(A,cube(A))),A); cube(A) = A"}},
      {"square-bino",
       "square of a binomial",
       {"square_bino(0,0) = 0"},
       {"square_bino(1,0) = 1", "square_bino(0,1) = 1", "square_bino(1,1) = 4", "square_bino(2,1) = 9",
        "square_bino(2,2) = 16", "square_bino(3,1) = 16", "square_bino(2,3) = 25", "square_bino(3,2) = 25"},
       {"sum", "prod", "double", "square"},
       {"square_bino(A,B) = square(sum(B,A))",
        "square_bino(A,B) = sum(sum(prod(A,A),double(prod(A,B))),prod(B,B))"}},
      {"square",
       "square of the successor of a natural number",
       {"square(0) = 0", "square(1) = 1"},
       {"square(2) = 4", "square(3) = 9", "square(4) = 16", "square(5) = 25"},
       {"sum", "prod", "triple"},
       {"square(s(A)) = sum(square(A),s(double(A))); square(0) = 0",
        "square(0) = 0; square(s(A)) = sum(sum(A,square(A)),s(A))"}},
      {"square-trino",
       "square of a trinomial",
       {"square_trino(0,0,0) = 0"},
       {"square_trino(0,1,1) = 4", "square_trino(1,0,1) = 4", "square_trino(1,1,0) = 4", "square_trino(2,0,0) = 4",
        "square_trino(0,2,0) = 4", "square_trino(0,0,2) = 4", "square_trino(1,1,1) = 9", "square_trino(2,1,1) = 16",
        "square_trino(1,2,1) = 16", "square_trino(1,1,2) = 16"},
       {"sum", "prod", "double", "square"},
       {"square_trino(A,B,C) = square(sum(B,sum(C,A)))",
        "square_trino(A,B,C) = sum(prod(sum(C,A),sum(B,sum(sum(B,C),A))),prod(B,B))"}},
      {"sum-n",
       "sum of the first n natural numbers",
       {"sum_n(0) = 0", "sum_n(1) = 1"},
       {"sum_n(2) = 3", "sum_n(3) = 6", "sum_n(4) = 10"},
       {"sum"},
       {"sum_n(0) = 0; sum_n(s(A)) = s(sum(sum_n(A),A))", "sum_n(s(A)) = sum(s(A),sum_n(A)); sum_n(A) = A"}},
      {"sum-n-square",
       "sum of the squares of the first n natural numbers",
       {"sum_n_square(0) = 0", "sum_n_square(1) = 1"},
       {"sum_n_square(2) = 5", "sum_n_square(3) = 14", "sum_n_square(4) = 30"},
       {"sum", "double", "square"},
       {"sum_n_square(s(A)) = sum(sum(square(A),A),sum(s(sum_n_square(A)),A)); sum_n_square(A) = A",
        "sum_n_square(s(A)) = sum(sum(sum_n_square(A),s(square(A))),sum(A,A)); sum_n_square(0) = 0"}},
  };
  return all;
}

const Spec& spec_for(std::string_view name) {
  for (const Spec& s : specs()) {
    if (s.name == name) return s;
  }
  throw UnknownProblem(name);
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Spec& s : specs()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

const Program& arithmetic_background() {
  static const Program p = parse_program(kArithmetic);
  return p;
}

Program background_for(const std::vector<std::string>& functions) {
  Program out;
  for (const Equation& e : arithmetic_background().equations) {
    if (std::find(functions.begin(), functions.end(), e.lhs.name()) != functions.end()) out.equations.push_back(e);
  }
  return out;
}

Problem builtin_problem(std::string_view name, bool cube_extra) {
  const Spec& s = spec_for(name);
  Problem p;
  p.name = s.name;
  p.description = s.description;
  for (std::string_view e : s.basic) p.dataset.positive_basic.push_back(parse_equation(e));
  for (std::string_view e : s.extra) p.dataset.positive_extra.push_back(parse_equation(e));
  if (cube_extra && name == "cube") p.dataset.positive_extra.push_back(parse_equation("cube(4) = 64"));
  p.dataset.background = background_for(s.background);
  p.dataset.target = p.dataset.positive_basic.front().lhs.symbol();
  validate_dataset(p.dataset);
  return p;
}

std::vector<Program> solution_oracles(std::string_view name) {
  std::vector<Program> out;
  for (std::string_view text : spec_for(name).solutions) out.push_back(parse_program(text));
  return out;
}

Program oracle_background(std::string_view name) {
  std::vector<std::string> functions = spec_for(name).background;
  if (name == "square") functions.push_back("double");
  return background_for(functions);
}

Quartiles quartiles(std::vector<double> values) {
  Quartiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.max = values.back();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const double iqr = q.q3 - q.q1;
  q.lower_fence = q.q1 - 1.5 * iqr;
  q.upper_fence = q.q3 + 1.5 * iqr;
  return q;
}

double ProblemResult::success_percent() const {
  return runs == 0 ? 0.0 : 100.0 * static_cast<double>(successes) / static_cast<double>(runs);
}

Quartiles BatchReport::summary() const {
  std::vector<double> percents;
  for (const ProblemResult& r : problems) percents.push_back(r.success_percent());
  return quartiles(std::move(percents));
}

BatchReport run_batch(const std::vector<std::string>& problems, const RunConfig& cfg, std::size_t runs_per_problem,
                      bool cube_extra, const RunCallback& on_run) {
  if (runs_per_problem == 0) throw std::invalid_argument("runs per problem must be positive");
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  BatchReport batch;
  batch.algorithm = cfg.algorithm;
  batch.seed = cfg.seed;
  batch.runs_per_problem = runs_per_problem;
  for (const std::string& name : problems) {
    const Problem problem = builtin_problem(name, cube_extra);
    ProblemResult result;
    result.problem = name;
    for (std::size_t k = 0; k < runs_per_problem; ++k) {
      RunConfig c = cfg;
      c.seed = cfg.seed + k;
      ++result.runs;
      try {
        RunReport r = run(problem.dataset, c, name);
        result.successes += r.success ? 1 : 0;
        if (on_run) on_run(r);
        result.reports.push_back(std::move(r));
      } catch (const std::exception& e) {
        result.errors.push_back("seed " + std::to_string(c.seed) + ": " + e.what());
      }
    }
    batch.problems.push_back(std::move(result));
  }
  batch.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return batch;
}

}  // namespace rsynth
