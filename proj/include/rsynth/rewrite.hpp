#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rsynth/dataset.hpp"
#include "rsynth/term.hpp"

namespace rsynth {

/// Limits on a single normalization. A normalization of n steps performs
/// n + 1 redex searches (the last one finds nothing).
struct EvalBudget {
  std::size_t max_rewrite_steps = 500;
  std::size_t max_redex_searches = 500;

  friend bool operator==(const EvalBudget&, const EvalBudget&) = default;
};

enum class EvalStatus {
  NormalForm,       // constructor-only normal form
  Stuck,            // normal form still containing a defined function symbol
  BudgetExhausted,  // step or search limit hit
};

struct EvalOutcome {
  EvalStatus status = EvalStatus::BudgetExhausted;
  std::optional<Term> term;  // absent when the budget ran out
  std::size_t steps = 0;

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

const char* to_string(EvalStatus s);

struct RewriteStep {
  Term result;
  std::size_t rule_index;
  Occurrence at;
};

/// Program equations first, in order, then the background knowledge.
std::vector<Equation> rule_list(const Program& program, const Program& background);

/// One leftmost-innermost step: the first redex in post-order, rewritten by
/// the first rule (in list order) whose lhs matches it.
std::optional<RewriteStep> rewrite_step(std::span<const Equation> rules, const Term& t);

/// Reference normalizer: iterates rewrite_step over whole terms. Slow; kept as
/// the oracle for the compiled evaluator.
EvalOutcome normalize_reference(const Program& program, const Program& background, const Term& t,
                                EvalBudget budget = {});

/// Compiled eager normalizer; same outcomes and step counts as the reference.
EvalOutcome normalize(const Program& program, const Program& background, const Term& t, EvalBudget budget = {});

enum class DeductionStatus { Deduced, Failed, BudgetExhausted };
const char* to_string(DeductionStatus s);

/// p |= e: e.lhs normalizes to exactly e.rhs within the budget.
bool deduces(const Program& program, const Program& background, const Example& e, EvalBudget budget = {});

}  // namespace rsynth
