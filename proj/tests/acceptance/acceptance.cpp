// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "rsynth/benchmarks.hpp"
#include "rsynth/evaluator.hpp"
#include "rsynth/evolution.hpp"
#include "rsynth/generalize.hpp"
#include "rsynth/operators.hpp"
#include "rsynth/report.hpp"
#include "rsynth/rewrite.hpp"
#include "rsynth/syntax.hpp"
#include "test_support.hpp"

using namespace rsynth;
using rsynth::testing::E;
using rsynth::testing::P;
using rsynth::testing::T;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  failed: " << what << "\n";
    }
  }
};

int failures = 0;

void report(const std::string& name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << v.detail.str() << (v.pass ? "PASS " : "FAIL ") << name << " (" << format_decimal(seconds) << " s)"
            << std::endl;
  failures += v.pass ? 0 : 1;
}

std::set<std::string> canonical_set(const std::vector<Equation>& eqs) {
  std::set<std::string> out;
  for (const Equation& e : eqs) out.insert(print_equation(canonical_rename(e)));
  return out;
}

std::set<std::string> canonical_set(std::initializer_list<const char*> eqs) {
  std::vector<Equation> parsed;
  for (const char* e : eqs) parsed.push_back(E(e));
  return canonical_set(parsed);
}

bool same_program(const Program& a, const Program& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal_up_to_renaming(a.equations[i], b.equations[i])) return false;
  }
  return true;
}

bool same_offspring(const OperatorOutcome& o, const std::vector<Program>& expected) {
  if (!o.applied || o.offspring.size() != expected.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!same_program(o.offspring[i], expected[i])) return false;
  }
  return true;
}

void generalization_tables(Verdict& v) {
  const Equation ex = E("square_bino(0,0) = 0");
  const std::vector<Equation> all = generalizations(ex);
  const std::vector<Equation> restricted = restricted_generalizations(ex);
  v.detail << "  " << all.size() << " generalizations, " << restricted.size() << " restricted\n";
  v.require(all.size() == 17, "17 generalizations");
  v.require(restricted.size() == 10, "10 restricted generalizations");
  v.require(canonical_set(all) ==
                canonical_set({"A = B", "A = 0", "square_bino(A,B) = C", "square_bino(A,B) = B", "square_bino(A,B) = A",
                               "square_bino(A,B) = 0", "square_bino(A,A) = B", "square_bino(A,A) = A",
                               "square_bino(A,A) = 0", "square_bino(A,0) = B", "square_bino(A,0) = A",
                               "square_bino(A,0) = 0", "square_bino(0,A) = B", "square_bino(0,A) = A",
                               "square_bino(0,A) = 0", "square_bino(0,0) = A", "square_bino(0,0) = 0"}),
            "generalization set");
  v.require(canonical_set(restricted) ==
                canonical_set({"square_bino(A,B) = B", "square_bino(A,B) = A", "square_bino(A,B) = 0",
                               "square_bino(A,A) = A", "square_bino(A,A) = 0", "square_bino(A,0) = A",
                               "square_bino(A,0) = 0", "square_bino(0,A) = A", "square_bino(0,A) = 0",
                               "square_bino(0,0) = 0"}),
            "restricted generalization set");
}

void rewriting_oracle(Verdict& v) {
  // Peano arithmetic up to 12^3 needs more than the default 500 steps.
  const EvalBudget budget{10'000'000, 10'000'000};
  const Evaluator ev(std::make_shared<const RuleBase>(arithmetic_background()), Program{});
  const std::map<std::string, std::function<std::uint64_t(std::uint64_t)>> unary = {
      {"double", [](std::uint64_t k) { return 2 * k; }},
      {"triple", [](std::uint64_t k) { return 3 * k; }},
      {"square", [](std::uint64_t k) { return k * k; }},
      {"cube", [](std::uint64_t k) { return k * k * k; }}};
  std::size_t cases = 0;
  std::size_t agree = 0;
  auto check = [&](const Term& t, std::uint64_t expected) {
    ++cases;
    const EvalOutcome o = ev.normalize(t, budget);
    if (o.status == EvalStatus::NormalForm && peano_inverse(*o.term) == expected) {
      ++agree;
    } else {
      v.require(false, print_term(t) + " != " + std::to_string(expected));
    }
  };
  for (std::uint64_t k = 0; k <= 12; ++k) {
    for (std::uint64_t m = 0; m <= 12; ++m) {
      check(Term::app(Symbol{"sum", 2}, {peano(k), peano(m)}), k + m);
      check(Term::app(Symbol{"prod", 2}, {peano(k), peano(m)}), k * m);
    }
    for (const auto& [f, native] : unary) check(Term::app(Symbol{f, 1}, {peano(k)}), native(k));
  }
  v.detail << "  " << agree << "/" << cases << " cases agree with native integers\n";
}

void solution_oracles_cover(Verdict& v) {
  for (const std::string& name : problem_names()) {
    Dataset d = builtin_problem(name).dataset;
    d.background = oracle_background(name);
    for (const Program& p : solution_oracles(name)) {
      const Fitness f = covering_factor(p, d);
      v.require(f.perfect(), name + ": " + print_program(p) + " covers " + format_fitness(f));
    }
  }
}

void operator_reproduction(Verdict& v) {
  const OperatorContext ctx;
  struct Case {
    const char* name;
    std::uint64_t seed;
    std::function<OperatorOutcome(Rng&)> make;
    std::vector<Program> expected;
  };
  const std::string head = "sum_n(s(A)) = sum(s(A),A); sum_n(A) = A; ";
  const std::vector<Case> cases = {
      {"global_xover", 13,
       [&](Rng& rng) {
         return global_xover(P("sum_n(N) = N; sum_n(s(N)) = sum(N,sum_n(N))"),
                             P("sum_n(s(N)) = s(sum(N,sum_n(N))); sum_n(0) = 1"), ctx, rng);
       },
       {P("sum_n(s(N)) = s(sum(N,sum_n(N))); sum_n(N) = N"), P("sum_n(s(N)) = sum(N,sum_n(N)); sum_n(0) = 1")}},
      {"global_swap", 0,
       [&](Rng& rng) { return global_swap(P("sum_n(N) = N; sum_n(s(N)) = sum(s(N),sum_n(N))"), ctx, rng); },
       {P("sum_n(s(N)) = sum(s(N),sum_n(N)); sum_n(N) = N")}},
      {"internal_swap", 3,
       [&](Rng& rng) { return internal_swap(P("prod(N,0) = 0; prod(s(M),N) = sum(N,prod(N,M))"), ctx, rng); },
       {P("prod(N,0) = 0; prod(N,s(M)) = sum(N,prod(N,M))")}},
      {"equalization", 100,
       [&](Rng& rng) { return equalization(P("sum_n(s(A)) = sum(s(A),A)"), P("sum_n(A) = A"), ctx, rng); },
       {P(head + "sum_n(s(A)) = sum_n(A)"), P(head + "sum_n(s(A)) = sum(sum_n(A),A)"),
        P(head + "sum_n(s(A)) = sum(s(sum_n(A)),A)"), P(head + "sum_n(s(A)) = sum(s(A),sum_n(A))")}},
      {"functional_swap", 2,
       [&](Rng& rng) { return functional_swap(P("prod(N,0) = 0; prod(s(M),N) = prod(N,sum(N,M))"), ctx, rng); },
       {P("prod(N,0) = 0; prod(s(M),N) = sum(N,prod(N,M))")}},
      {"functional_rename", 2,
       [&](Rng& rng) { return functional_rename(P("sum(N,0) = N; sum(s(N),M) = s(sum(N,M))"), ctx, rng); },
       {P("sum(N,0) = N; sum(N,s(M)) = s(sum(N,M))")}},
  };
  for (const Case& c : cases) {
    Rng rng(c.seed);
    const bool ok = same_offspring(c.make(rng), c.expected);
    v.detail << "  " << c.name << " seed " << c.seed << ": " << (ok ? "reproduced" : "differs") << "\n";
    v.require(ok, std::string(c.name) + " with seed " + std::to_string(c.seed));
  }

  Rng rng(0);
  const std::vector<Equation> got = equalization_candidates(E("sum_n(s(A)) = sum(s(A),A)"), E("sum_n(N) = N"), rng);
  v.require(canonical_set(got) == canonical_set({"sum_n(s(A)) = sum_n(A)", "sum_n(s(A)) = sum(sum_n(A),A)",
                                                 "sum_n(s(A)) = sum(s(sum_n(A)),A)",
                                                 "sum_n(s(A)) = sum(s(A),sum_n(A))"}) &&
                got.size() == 4,
            "equalization candidate set");
}

struct Threshold {
  std::string problem;
  bool at_least;
  std::size_t bound;
};

BatchReport desk_batch(Algorithm a) {
  RunConfig cfg;
  cfg.algorithm = a;
  cfg.seed = 1;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return run_batch(problem_names(), cfg, 10);
}

std::size_t successes(const BatchReport& b, const std::string& problem) {
  for (const ProblemResult& p : b.problems) {
    if (p.problem == problem) return p.successes;
  }
  throw UnknownProblem(problem);
}

void desk_scale(Verdict& v, const BatchReport& haea, const BatchReport& gp) {
  const std::vector<std::pair<Algorithm, Threshold>> thresholds = {
      {Algorithm::Haea, {"cube-bino", true, 8}},    {Algorithm::Haea, {"square-bino", true, 8}},
      {Algorithm::Haea, {"sum-n", true, 8}},        {Algorithm::Haea, {"square", true, 7}},
      {Algorithm::Haea, {"square-trino", true, 6}}, {Algorithm::Haea, {"sum-n-square", true, 2}},
      {Algorithm::Gp, {"cube", false, 2}},          {Algorithm::Gp, {"square", false, 2}},
      {Algorithm::Gp, {"sum-n-square", false, 2}}};
  for (const BatchReport* b : {&haea, &gp}) {
    for (const ProblemResult& p : b->problems) {
      v.detail << "  " << to_string(b->algorithm) << " " << p.problem << ": " << p.successes << "/" << p.runs << "\n";
      v.require(p.errors.empty(), p.problem + " runs raised errors");
    }
  }
  for (const auto& [a, t] : thresholds) {
    const std::size_t got = successes(a == Algorithm::Haea ? haea : gp, t.problem);
    const bool ok = t.at_least ? got >= t.bound : got <= t.bound;
    v.require(ok, std::string(to_string(a)) + " " + t.problem + ": " + std::to_string(got) + "/10, expected " +
                      (t.at_least ? ">= " : "<= ") + std::to_string(t.bound));
  }
  v.detail << "  wall time: haea " << format_decimal(haea.wall_seconds) << " s, gp "
           << format_decimal(gp.wall_seconds) << " s\n";
}

void comparative(Verdict& v, const BatchReport& haea, const BatchReport& gp) {
  const Quartiles h = haea.summary();
  const Quartiles g = gp.summary();
  v.detail << "  haea " << format_quartiles(h) << "\n  gp   " << format_quartiles(g) << "\n";
  v.require(h.mean > g.mean, "haea mean success must exceed gp mean");
}

void property_suites(Verdict& v) {
  Rng rng(2024);
  const std::vector<std::string> vars = {"X", "Y", "Z"};
  std::size_t round_trips = 0;
  std::size_t compositions = 0;
  std::size_t unifications = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term t = rsynth::testing::random_term(rng, 5, vars);
    round_trips += parse_term(print_term(t, false)) == t && parse_term(print_term(t, true)) == t;

    Substitution delta;
    Substitution sigma;
    for (const std::string& x : vars) {
      if (rng.coin(0.6)) delta.bind(x, rsynth::testing::random_term(rng, 3, vars));
      if (rng.coin(0.6)) sigma.bind(x, rsynth::testing::random_term(rng, 3, vars));
    }
    compositions += apply(compose(delta, sigma), t) == apply(delta, apply(sigma, t));

    Substitution theta;
    for (const std::string& x : vars) theta.bind(x, rsynth::testing::random_term(rng, 2, {}));
    const Term instance = apply(theta, t);
    const auto m = match(t, instance);
    const auto u = unify(t, instance);
    unifications += m && apply(*m, t) == instance && u && apply(*u, t) == apply(*u, instance);
  }
  v.detail << "  term laws: round-trip " << round_trips << "/1000, composition " << compositions
           << "/1000, match and unify " << unifications << "/1000\n";
  v.require(round_trips == 1000 && compositions == 1000 && unifications == 1000, "term laws");

  std::size_t generalization_ok = 0;
  for (int i = 0; i < 300; ++i) {
    const Equation e = rsynth::testing::random_example(rng);
    generalization_ok += canonical_set(generalizations(e)) == rsynth::testing::brute_force_generalizations(e);
  }
  v.detail << "  generalizations vs brute force: " << generalization_ok << "/300\n";
  v.require(generalization_ok == 300, "generalization completeness");

  std::size_t applications = 0;
  std::size_t legal = 0;
  for (const std::string& name : problem_names()) {
    const Dataset d = builtin_problem(name).dataset;
    const OperatorContext ctx = make_operator_context(d, ProgramLimits{}, 2);
    std::vector<Program> pop = initial_population(d, 40, rng);
    for (int round = 0; round < 5; ++round) {
      for (Program& p : pop) {
        const OperatorId op = kAllOperators[rng.index(kOperatorCount)];
        const OperatorOutcome o = apply_operator(op, p, pop[rng.index(pop.size())], ctx, rng);
        ++applications;
        bool ok = !o.offspring.empty();
        for (const Program& q : o.offspring) {
          ok = ok && is_admissible(q, ctx.limits);
          for (const Equation& e : q.equations) ok = ok && is_program_legal(e) && orphan_variables(e).empty();
        }
        legal += ok;
        p = o.offspring[rng.index(o.offspring.size())];
      }
    }
  }
  v.detail << "  operator closure: " << legal << "/" << applications << " applications legal\n";
  v.require(applications >= 1000 && legal == applications, "operator closure");

  std::size_t rate_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    OperatorRates r = random_rates(rng, 1e-4);
    r[rng.index(kOperatorCount)] *= rng.coin(0.5) ? 1.0 + rng.uniform01() : 1.0 - rng.uniform01();
    normalize_rates(r, 1e-4);
    double sum = 0.0;
    bool positive = true;
    for (double x : r) {
      sum += x;
      positive = positive && x > 0.0 && x < 1.0;
    }
    rate_ok += positive && std::abs(sum - 1.0) < 1e-9;
  }
  v.detail << "  rate invariants: " << rate_ok << "/1000\n";
  v.require(rate_ok == 1000, "rate invariants");

  for (Algorithm a : {Algorithm::Haea, Algorithm::Gp}) {
    RunConfig cfg;
    cfg.algorithm = a;
    cfg.min_population = 100;
    cfg.max_iterations = 10;
    cfg.seed = 99;
    const Dataset d = builtin_problem("square-bino").dataset;
    const std::string first = format_run_report(run(d, cfg, "square-bino"));
    const std::string second = format_run_report(run(d, cfg, "square-bino"));
    v.require(first == second, std::string(to_string(a)) + " runs are not byte-identical");
  }
}

}  // namespace

int main() {
  report("generalization tables", generalization_tables);
  report("rewriting oracle", rewriting_oracle);
  report("solution-oracle covering", solution_oracles_cover);
  report("operator reproduction", operator_reproduction);
  report("property suites", property_suites);

  std::cout << "running the desk-scale batch (7 problems x 10 runs per algorithm)" << std::endl;
  BatchReport haea;
  BatchReport gp;
  std::string batch_error;
  try {
    haea = desk_batch(Algorithm::Haea);
    gp = desk_batch(Algorithm::Gp);
  } catch (const std::exception& e) {
    batch_error = e.what();
  }
  report("desk-scale end-to-end", [&](Verdict& v) {
    v.require(batch_error.empty(), batch_error);
    if (batch_error.empty()) desk_scale(v, haea, gp);
  });
  report("comparative claim", [&](Verdict& v) {
    v.require(batch_error.empty(), batch_error);
    if (batch_error.empty()) comparative(v, haea, gp);
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
