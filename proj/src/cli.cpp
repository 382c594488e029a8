#include "rsynth/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rsynth/benchmarks.hpp"
#include "rsynth/evolution.hpp"
#include "rsynth/generalize.hpp"
#include "rsynth/report.hpp"
#include "rsynth/syntax.hpp"

namespace rsynth {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string problem;
  std::string dataset;
  std::string algorithm = "haea";
  std::string child_policy = "uniform";
  std::string out_dir = ".";
  std::string problems = "all";
  std::string program;
  std::string example;
  std::string show;
  RunConfig cfg;
  std::size_t runs = 10;
  bool restricted = false;
  bool record_time = false;
  bool cube_extra = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write '" + path.string() + "'");
}

void add_budget_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--max-steps", f.cfg.budget.max_rewrite_steps, "Rewrite steps per example")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-searches", f.cfg.budget.max_redex_searches, "Redex searches per example")
      ->check(CLI::PositiveNumber);
}

void add_config_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--algorithm", f.algorithm, "haea or gp")->check(CLI::IsMember({"haea", "gp"}));
  cmd->add_option("--seed", f.cfg.seed, "Random seed");
  cmd->add_option("--population", f.cfg.min_population, "Minimum population size")->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", f.cfg.max_iterations, "Maximum iterations");
  cmd->add_option("--max-basic", f.cfg.limits.max_basic_equations, "Basic equations per program")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-recursive", f.cfg.limits.max_recursive_equations, "Recursive equations per program")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-nodes", f.cfg.limits.max_equation_nodes, "Nodes per equation")->check(CLI::PositiveNumber);
  cmd->add_option("--gp-depth", f.cfg.gp_max_depth, "Depth of trees grown by mutation")->check(CLI::PositiveNumber);
  cmd->add_option("--tournament", f.cfg.tournament_size, "Tournament size")->check(CLI::PositiveNumber);
  cmd->add_option("--child-policy", f.child_policy, "uniform or best")->check(CLI::IsMember({"uniform", "best"}));
  cmd->add_option("--jobs", f.cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out_dir, "Directory for report files");
  cmd->add_flag("--record-time", f.record_time, "Include wall time in report files");
  cmd->add_flag("--cube-extra", f.cube_extra, "Add cube(4) = 64 to the cube problem");
  add_budget_options(cmd, f);
}

void finalize_config(Flags& f) {
  f.cfg.algorithm = f.algorithm == "gp" ? Algorithm::Gp : Algorithm::Haea;
  f.cfg.child_policy = f.child_policy == "best" ? ChildPolicy::Best : ChildPolicy::Uniform;
}

struct Source {
  std::string name;
  Dataset dataset;
};

Source load_source(const Flags& f) {
  if (!f.problem.empty() && !f.dataset.empty()) throw std::invalid_argument("give --problem or --dataset, not both");
  if (!f.problem.empty()) return Source{f.problem, builtin_problem(f.problem, f.cube_extra).dataset};
  if (!f.dataset.empty()) {
    try {
      return Source{fs::path(f.dataset).stem().string(), parse_dataset(read_file(f.dataset))};
    } catch (const SyntaxError& e) {
      throw std::runtime_error(f.dataset + ": " + e.what());
    }
  }
  throw std::invalid_argument("one of --problem or --dataset is required");
}

int cmd_run(Flags& f, std::ostream& out) {
  finalize_config(f);
  const Source src = load_source(f);
  const RunReport r = run(src.dataset, f.cfg, src.name);
  const fs::path path = fs::path(f.out_dir) / run_report_name(r);
  write_file(path, format_run_report(r, f.record_time));
  out << (r.success ? "success" : "failure") << " after " << r.iterations << " iterations, fitness "
      << format_fitness(r.best_fitness) << "\n";
  out << print_program(r.best, true, "\n") << "\n";
  out << "report: " << path.string() << "\n";
  return 0;
}

std::vector<std::string> split_problems(const std::string& list) {
  if (list == "all") return problem_names();
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    builtin_problem(item);  // validates the name
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("--problems names no problem");
  return out;
}

int cmd_batch(Flags& f, std::ostream& out) {
  finalize_config(f);
  const std::vector<std::string> problems = split_problems(f.problems);
  const BatchReport b = run_batch(problems, f.cfg, f.runs, f.cube_extra, [&](const RunReport& r) {
    out << r.problem << " seed " << r.seed << ": " << (r.success ? "success" : "failure") << " ("
        << format_fitness(r.best_fitness) << ")\n";
  });
  const fs::path stem = fs::path(f.out_dir) / batch_report_stem(b);
  const std::string summary = format_batch_summary(b, f.record_time);
  write_file(stem.string() + ".tsv", format_batch_table(b));
  write_file(stem.string() + ".txt", summary);
  out << "\n" << summary;
  return 0;
}

int cmd_eval(Flags& f, std::ostream& out) {
  const Source src = load_source(f);
  Program program;
  try {
    program = parse_program(read_file(f.program));
  } catch (const SyntaxError& e) {
    throw std::runtime_error(f.program + ": " + e.what());
  }
  for (const Equation& e : program.equations) {
    if (!is_program_legal(e)) throw std::invalid_argument("not a program-legal equation: " + print_equation(e, true));
  }
  const FitnessEvaluator fitness(src.dataset, f.cfg.budget);
  const std::vector<DeductionStatus> statuses = fitness.statuses(program);
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    out << print_equation(fitness.examples()[i], true) << "\t" << to_string(statuses[i]) << "\n";
  }
  out << "covering: " << format_fitness(fitness.evaluate(program)) << "\n";
  return 0;
}

int cmd_generalize(Flags& f, std::ostream& out) {
  const Equation e = parse_equation(f.example);
  if (!e.lhs.is_ground() || !e.rhs.is_ground()) throw std::invalid_argument("--example must be a ground equation");
  const std::vector<Equation> items = f.restricted ? restricted_generalizations(e) : generalizations(e);
  for (const Equation& g : items) out << print_equation(g, true) << "\n";
  out << items.size() << (f.restricted ? " restricted generalizations" : " generalizations") << "\n";
  return 0;
}

int cmd_problems(Flags& f, std::ostream& out) {
  if (!f.show.empty()) {
    out << print_dataset(builtin_problem(f.show, f.cube_extra).dataset);
    return 0;
  }
  for (const std::string& name : problem_names()) out << name << "\t" << builtin_problem(name).description << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolves rewrite programs from input/output examples", "rsynth"};
  app.require_subcommand(1);
  Flags f;

  auto* run_cmd = app.add_subcommand("run", "Evolve one program");
  run_cmd->add_option("--problem", f.problem, "Builtin problem name");
  run_cmd->add_option("--dataset", f.dataset, "Dataset file");
  add_config_options(run_cmd, f);

  auto* batch_cmd = app.add_subcommand("batch", "Repeat seeded runs over several problems");
  batch_cmd->add_option("--runs", f.runs, "Runs per problem")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--problems", f.problems, "all, or a comma-separated list");
  add_config_options(batch_cmd, f);

  auto* eval_cmd = app.add_subcommand("eval", "Covering factor of a program file");
  eval_cmd->add_option("--program", f.program, "Program file")->required();
  eval_cmd->add_option("--problem", f.problem, "Builtin problem name");
  eval_cmd->add_option("--dataset", f.dataset, "Dataset file");
  add_budget_options(eval_cmd, f);

  auto* gen_cmd = app.add_subcommand("generalize", "List the generalizations of a ground equation");
  gen_cmd->add_option("--example", f.example, "Ground equation")->required();
  gen_cmd->add_flag("--restricted", f.restricted, "Keep only program-legal equations");

  auto* problems_cmd = app.add_subcommand("problems", "List builtin problems");
  problems_cmd->add_option("--show", f.show, "Print one problem as a dataset file");
  problems_cmd->add_flag("--cube-extra", f.cube_extra, "Add cube(4) = 64 to the cube problem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) return cmd_run(f, out);
    if (*batch_cmd) return cmd_batch(f, out);
    if (*eval_cmd) return cmd_eval(f, out);
    if (*gen_cmd) return cmd_generalize(f, out);
    if (*problems_cmd) return cmd_problems(f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rsynth
