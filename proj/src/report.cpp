#include "rsynth/report.hpp"

#include <cstdio>
#include <sstream>

#include "rsynth/syntax.hpp"

namespace rsynth {

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos && s != "inf" && s != "nan") s += ".0";
  return s;
}

std::string format_fitness(const Fitness& f) {
  return std::to_string(f.covered) + "/" + std::to_string(f.total) + " = " + format_decimal(f.value());
}

std::string format_run_report(const RunReport& r, bool include_time) {
  std::ostringstream os;
  os << "algorithm: " << to_string(r.algorithm) << "\n";
  os << "problem: " << (r.problem.empty() ? "-" : r.problem) << "\n";
  os << "seed: " << r.seed << "\n";
  os << "population: " << r.population << "\n";
  os << "iterations: " << r.iterations << "\n";
  os << "success: " << (r.success ? "yes" : "no") << "\n";
  os << "best_fitness: " << format_fitness(r.best_fitness) << "\n";
  os << "best_program: " << print_program(r.best, true) << "\n";
  os << "best_program_peano: " << print_program(r.best, false) << "\n";
  if (include_time) os << "wall_seconds: " << format_decimal(r.wall_seconds) << "\n";
  os << "\n[operators]\noperator\tselected\tapplied\timproved\tfinal_mean_rate\n";
  for (std::size_t k = 0; k < kOperatorCount; ++k) {
    const OperatorStats& s = r.operators[k];
    if (r.algorithm == Algorithm::Gp && s.selected == 0) continue;
    os << to_string(kAllOperators[k]) << "\t" << s.selected << "\t" << s.applied << "\t" << s.improved << "\t"
       << format_decimal(s.final_mean_rate) << "\n";
  }
  os << "\n[trajectory]\niteration\tbest_covered\tmean_fitness\timprovements\n";
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    const IterationStats& s = r.trajectory[i];
    os << i << "\t" << s.best_covered << "\t" << format_decimal(s.mean_fitness) << "\t" << s.improvements << "\n";
  }
  return os.str();
}

std::string format_batch_table(const BatchReport& b) {
  std::ostringstream os;
  os << "problem\truns\tsuccesses\tfailures\tsuccess_percent\n";
  for (const ProblemResult& p : b.problems) {
    os << p.problem << "\t" << p.runs << "\t" << p.successes << "\t" << p.failures() << "\t"
       << format_decimal(p.success_percent()) << "\n";
  }
  return os.str();
}

std::string format_quartiles(const Quartiles& q) {
  std::ostringstream os;
  os << "min=" << format_decimal(q.min) << " q1=" << format_decimal(q.q1) << " median=" << format_decimal(q.median)
     << " q3=" << format_decimal(q.q3) << " max=" << format_decimal(q.max) << " mean=" << format_decimal(q.mean)
     << " lower_fence=" << format_decimal(q.lower_fence) << " upper_fence=" << format_decimal(q.upper_fence);
  return os.str();
}

std::string format_batch_summary(const BatchReport& b, bool include_time) {
  std::ostringstream os;
  os << "algorithm: " << to_string(b.algorithm) << "\n";
  os << "seed: " << b.seed << "\n";
  os << "runs_per_problem: " << b.runs_per_problem << "\n";
  if (include_time) os << "wall_seconds: " << format_decimal(b.wall_seconds) << "\n";
  os << "\n";
  std::size_t width = 7;
  for (const ProblemResult& p : b.problems) width = std::max(width, p.problem.size());
  for (const ProblemResult& p : b.problems) {
    const auto filled = static_cast<std::size_t>(p.success_percent() / 5.0 + 0.5);
    os << p.problem << std::string(width - p.problem.size() + 2, ' ') << "ok " << p.successes << "  fail "
       << p.failures() << "  |" << std::string(filled, '#') << std::string(20 - filled, '.') << "| "
       << format_decimal(p.success_percent()) << "%\n";
    for (const std::string& e : p.errors) os << "  error: " << e << "\n";
  }
  os << "\nquartiles: " << format_quartiles(b.summary()) << "\n";
  return os.str();
}

std::string run_report_name(const RunReport& r) {
  return std::string("run-") + to_string(r.algorithm) + "-" + (r.problem.empty() ? "dataset" : r.problem) + "-seed" +
         std::to_string(r.seed) + ".txt";
}

std::string batch_report_stem(const BatchReport& b) {
  return std::string("batch-") + to_string(b.algorithm) + "-seed" + std::to_string(b.seed);
}

}  // namespace rsynth
