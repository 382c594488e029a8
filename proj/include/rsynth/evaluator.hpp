#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsynth/rewrite.hpp"

namespace rsynth {

/// Flat, integer-coded terms. Symbols are ids into a SymbolTable; variables
/// are slots local to one rule.
struct CodeNode {
  static constexpr std::uint32_t kVar = 0xffffffffu;

  std::uint32_t head = 0;   // symbol id, or variable slot when arity == kVar
  std::uint32_t arity = 0;  // kVar for variables
  std::uint32_t first = 0;  // first child index into CodeStore::kids

  bool is_var() const { return arity == kVar; }
};

struct CodeStore {
  std::vector<CodeNode> nodes;
  std::vector<std::uint32_t> kids;
};

class SymbolTable {
 public:
  static constexpr std::uint32_t kUnknown = 0xffffffffu;

  std::uint32_t intern(const Symbol& sym);
  std::uint32_t find(const Symbol& sym) const;
  const Symbol& symbol(std::uint32_t id) const { return symbols_[id]; }
  bool is_constructor(std::uint32_t id) const { return constructor_[id]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(symbols_.size()); }

 private:
  static std::string key(const Symbol& sym) { return sym.name + '/' + std::to_string(sym.arity); }

  std::vector<Symbol> symbols_;
  std::vector<bool> constructor_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

struct CompiledRule {
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
  std::uint32_t var_count = 0;
  std::uint32_t root_symbol = 0;
};

/// Background knowledge compiled once and shared by every evaluator built on
/// it. `vocabulary` lists extra terms (examples, say) whose symbols should get
/// ids up front.
class RuleBase {
 public:
  explicit RuleBase(const Program& background, const std::vector<Term>& vocabulary = {});

  const SymbolTable& symbols() const { return symbols_; }
  const CodeStore& code() const { return code_; }
  const std::vector<CompiledRule>& rules() const { return rules_; }
  const std::vector<std::uint32_t>& rules_for(std::uint32_t symbol) const;
  const Program& background() const { return background_; }

 private:
  Program background_;
  SymbolTable symbols_;
  CodeStore code_;
  std::vector<CompiledRule> rules_;
  std::vector<std::vector<std::uint32_t>> by_root_;
};

/// A ground term compiled against a rule base's symbol table.
struct CompiledGround {
  CodeStore code;
  std::uint32_t root = 0;
  bool known_symbols = true;  // false if some symbol is missing from the table
};

CompiledGround compile_ground(const Term& t, const SymbolTable& symbols);

/// Program plus background knowledge ready for repeated normalization.
/// Immutable after construction; normalize() and check() may run concurrently.
class Evaluator {
 public:
  Evaluator(std::shared_ptr<const RuleBase> base, const Program& program);

  EvalOutcome normalize(const Term& t, EvalBudget budget) const;
  DeductionStatus check(const Example& e, EvalBudget budget) const;
  /// Hot path: both sides compiled against base->symbols().
  DeductionStatus check(const CompiledGround& lhs, const CompiledGround& rhs, EvalBudget budget) const;

  const RuleBase& base() const { return *base_; }

 private:
  friend class Machine;

  std::uint32_t symbol_id(const Symbol& sym);
  std::uint32_t compile_pattern(const Term& t, std::unordered_map<std::string, std::uint32_t>& slots);

  std::shared_ptr<const RuleBase> base_;
  std::vector<Symbol> extra_symbols_;  // ids continue after the base table
  CodeStore code_;
  std::vector<CompiledRule> rules_;
};

}  // namespace rsynth
