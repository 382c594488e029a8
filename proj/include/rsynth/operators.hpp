#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsynth/dataset.hpp"
#include "rsynth/rng.hpp"
#include "rsynth/term.hpp"

namespace rsynth {

enum class OperatorId {
  GlobalXover,
  GlobalSwap,
  InternalSwap,
  Equalization,
  Composition,
  FunctionalSwap,
  FunctionalRename,
  GpXover,
  GpMutation,
};

inline constexpr std::size_t kOperatorCount = 9;
inline constexpr std::array<OperatorId, kOperatorCount> kAllOperators = {
    OperatorId::GlobalXover,    OperatorId::GlobalSwap,       OperatorId::InternalSwap,
    OperatorId::Equalization,   OperatorId::Composition,      OperatorId::FunctionalSwap,
    OperatorId::FunctionalRename, OperatorId::GpXover,        OperatorId::GpMutation,
};

const char* to_string(OperatorId op);
std::optional<OperatorId> operator_from_string(std::string_view name);
/// Takes a mate from the population (composition takes the background instead).
bool needs_mate(OperatorId op);

struct OperatorOutcome {
  std::vector<Program> offspring;  // never empty
  bool applied = false;
};

/// What every operator may consult besides its parents.
struct OperatorContext {
  ProgramLimits limits;
  Program background;
  /// Symbols in scope: those of the examples and of the background.
  std::vector<Symbol> signature;
  std::size_t gp_max_depth = 2;
  /// Chance that equalization preprocessing turns a constant into a variable.
  double constant_replacement = 0.5;
};

OperatorContext make_operator_context(const Dataset& d, const ProgramLimits& limits, std::size_t gp_max_depth);

OperatorOutcome global_xover(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng);
OperatorOutcome global_swap(const Program& p, const OperatorContext& ctx, Rng& rng);
OperatorOutcome internal_swap(const Program& p, const OperatorContext& ctx, Rng& rng);
OperatorOutcome equalization(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng);
OperatorOutcome composition(const Program& p, const OperatorContext& ctx, Rng& rng);
OperatorOutcome functional_swap(const Program& p, const OperatorContext& ctx, Rng& rng);
OperatorOutcome functional_rename(const Program& p, const OperatorContext& ctx, Rng& rng);
OperatorOutcome gp_xover(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng);
OperatorOutcome gp_mutation(const Program& p, const OperatorContext& ctx, Rng& rng);

/// Dispatch. `mate` is ignored by operators that do not need one.
OperatorOutcome apply_operator(OperatorId op, const Program& p, const Program& mate, const OperatorContext& ctx,
                               Rng& rng);

// Building blocks, exposed for testing.

/// Replaces each distinct rhs variable missing from lhs by a uniformly chosen
/// lhs variable. Nothing when a repair is needed but lhs has no variables.
std::optional<Equation> repair_orphans(const Equation& e, Rng& rng);

/// Equalization preprocessing: lhs constants and rhs constants become lhs
/// variables with the given probability; orphan rhs variables always do.
Equation equalization_preprocess(const Equation& e, double constant_probability, Rng& rng);

/// For every occurrence w of receptor.rhs (pre-order) whose subterm unifies
/// with emitter.rhs: receptor.lhs = receptor.rhs[emitter.lhs]_w, orphans
/// repaired. The emitter must not share variables with the receptor.
std::vector<Equation> equalization_candidates(const Equation& receptor, const Equation& emitter, Rng& rng);

enum class TreeMethod { Full, Grow };

/// Random term of depth at most `depth` (a leaf has depth 1). Full trees
/// use function symbols until the last level. Needs a constant or a variable.
Term random_tree(TreeMethod method, std::size_t depth, std::span<const Symbol> signature,
                 std::span<const std::string> variables, Rng& rng);

/// Ramped half-and-half: depths cycle through 1..max_depth, methods alternate.
std::vector<Term> ramped_half_and_half(std::size_t count, std::size_t max_depth, std::span<const Symbol> signature,
                                       std::span<const std::string> variables, Rng& rng);

}  // namespace rsynth
