#include "rsynth/rewrite.hpp"

#include <stdexcept>
#include <unordered_map>

#include "rsynth/evaluator.hpp"
#include "rsynth/syntax.hpp"

namespace rsynth {

const char* to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::NormalForm: return "normal-form";
    case EvalStatus::Stuck: return "stuck";
    case EvalStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

const char* to_string(DeductionStatus s) {
  switch (s) {
    case DeductionStatus::Deduced: return "deduced";
    case DeductionStatus::Failed: return "failed";
    case DeductionStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::vector<Equation> rule_list(const Program& program, const Program& background) {
  std::vector<Equation> rules = program.equations;
  rules.insert(rules.end(), background.equations.begin(), background.equations.end());
  return rules;
}

namespace {

struct Found {
  std::size_t rule;
  Term result;
};

// Subterms already known to hold no redex, keyed by node. The terms are kept
// alive so that node addresses are never reused while cached.
struct Irreducible {
  std::unordered_map<const void*, Term> nodes;

  bool contains(const Term& t) const { return nodes.count(t.identity()) != 0; }
  void insert(const Term& t) { nodes.emplace(t.identity(), t); }
};

// Post-order search; `path` is the occurrence of t and is filled in on success.
std::optional<Found> first_redex(std::span<const Equation> rules, const Term& t, std::vector<std::size_t>& path,
                                 Irreducible* seen) {
  if (t.is_var() || (seen && seen->contains(t))) return std::nullopt;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i + 1);
    if (auto f = first_redex(rules, t.args()[i], path, seen)) return f;
    path.pop_back();
  }
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].lhs.is_var()) continue;
    if (auto sigma = match(rules[r].lhs, t)) return Found{r, apply(*sigma, rules[r].rhs)};
  }
  if (seen) seen->insert(t);
  return std::nullopt;
}

std::optional<RewriteStep> step_with(std::span<const Equation> rules, const Term& t, Irreducible* seen) {
  std::vector<std::size_t> path;
  auto found = first_redex(rules, t, path, seen);
  if (!found) return std::nullopt;
  Occurrence at{std::move(path)};
  Term result = replace_at(t, at, found->result);
  return RewriteStep{std::move(result), found->rule, std::move(at)};
}

bool only_constructors(const Term& t) {
  if (t.is_var()) return true;
  if (!is_constructor(t.symbol())) return false;
  for (const Term& a : t.args()) {
    if (!only_constructors(a)) return false;
  }
  return true;
}

void require_legal(const std::vector<Equation>& rules) {
  for (const Equation& e : rules) {
    if (!is_program_legal(e)) throw std::invalid_argument("not a program-legal rule: " + print_equation(e));
  }
}

}  // namespace

std::optional<RewriteStep> rewrite_step(std::span<const Equation> rules, const Term& t) {
  return step_with(rules, t, nullptr);
}

EvalOutcome normalize_reference(const Program& program, const Program& background, const Term& t,
                                EvalBudget budget) {
  const std::vector<Equation> rules = rule_list(program, background);
  require_legal(rules);
  Term cur = t;
  std::size_t steps = 0;
  std::size_t searches = 0;
  Irreducible seen;
  while (true) {
    if (searches + 1 > budget.max_redex_searches) return EvalOutcome{EvalStatus::BudgetExhausted, std::nullopt, steps};
    ++searches;
    auto step = step_with(rules, cur, &seen);
    if (!step) {
      const EvalStatus status = only_constructors(cur) ? EvalStatus::NormalForm : EvalStatus::Stuck;
      return EvalOutcome{status, cur, steps};
    }
    if (steps + 1 > budget.max_rewrite_steps) return EvalOutcome{EvalStatus::BudgetExhausted, std::nullopt, steps};
    ++steps;
    cur = std::move(step->result);
  }
}

EvalOutcome normalize(const Program& program, const Program& background, const Term& t, EvalBudget budget) {
  auto base = std::make_shared<const RuleBase>(background, std::vector<Term>{t});
  return Evaluator(base, program).normalize(t, budget);
}

bool deduces(const Program& program, const Program& background, const Example& e, EvalBudget budget) {
  auto base = std::make_shared<const RuleBase>(background, std::vector<Term>{e.lhs, e.rhs});
  return Evaluator(base, program).check(e, budget) == DeductionStatus::Deduced;
}

}  // namespace rsynth
