#include "rsynth/evaluator.hpp"

#include <algorithm>
#include <stdexcept>

#include "rsynth/syntax.hpp"

namespace rsynth {

std::uint32_t SymbolTable::intern(const Symbol& sym) {
  auto [it, inserted] = ids_.try_emplace(key(sym), size());
  if (inserted) {
    symbols_.push_back(sym);
    constructor_.push_back(rsynth::is_constructor(sym));
  }
  return it->second;
}

std::uint32_t SymbolTable::find(const Symbol& sym) const {
  auto it = ids_.find(key(sym));
  return it == ids_.end() ? kUnknown : it->second;
}

namespace {

constexpr std::uint32_t kUnbound = 0xffffffffu;
constexpr std::uint32_t kFailed = 0xfffffffeu;

// Appends t to the store. `resolve` maps a symbol to its id; variables get
// slots numbered by first occurrence.
template <typename Resolve>
std::uint32_t compile_into(CodeStore& store, const Term& t, std::unordered_map<std::string, std::uint32_t>& slots,
                           Resolve&& resolve) {
  const auto index = static_cast<std::uint32_t>(store.nodes.size());
  if (t.is_var()) {
    auto [it, inserted] = slots.try_emplace(t.name(), static_cast<std::uint32_t>(slots.size()));
    store.nodes.push_back(CodeNode{it->second, CodeNode::kVar, 0});
    return index;
  }
  store.nodes.push_back(CodeNode{resolve(t.symbol()), static_cast<std::uint32_t>(t.arity()), 0});
  std::vector<std::uint32_t> kids;
  kids.reserve(t.arity());
  for (const Term& a : t.args()) kids.push_back(compile_into(store, a, slots, resolve));
  store.nodes[index].first = static_cast<std::uint32_t>(store.kids.size());
  store.kids.insert(store.kids.end(), kids.begin(), kids.end());
  return index;
}

void require_rule(const Equation& e) {
  if (!is_program_legal(e)) throw std::invalid_argument("not a program-legal rule: " + print_equation(e));
}

}  // namespace

RuleBase::RuleBase(const Program& background, const std::vector<Term>& vocabulary) : background_(background) {
  for (const char* name : {"0", "[]"}) symbols_.intern(Symbol{name, 0});
  symbols_.intern(Symbol{kSuccName, 1});
  symbols_.intern(Symbol{kConsName, 2});
  auto intern = [this](const Symbol& sym) { return symbols_.intern(sym); };
  for (const Equation& e : background_.equations) {
    require_rule(e);
    std::unordered_map<std::string, std::uint32_t> slots;
    CompiledRule r;
    r.lhs = compile_into(code_, e.lhs, slots, intern);
    r.rhs = compile_into(code_, e.rhs, slots, intern);
    r.var_count = static_cast<std::uint32_t>(slots.size());
    r.root_symbol = code_.nodes[r.lhs].head;
    rules_.push_back(r);
  }
  std::unordered_map<std::string, std::uint32_t> scratch;
  CodeStore discard;
  for (const Term& t : vocabulary) compile_into(discard, t, scratch, intern);
  by_root_.resize(symbols_.size());
  for (std::uint32_t i = 0; i < rules_.size(); ++i) by_root_[rules_[i].root_symbol].push_back(i);
}

const std::vector<std::uint32_t>& RuleBase::rules_for(std::uint32_t symbol) const {
  static const std::vector<std::uint32_t> kNone;
  return symbol < by_root_.size() ? by_root_[symbol] : kNone;
}

CompiledGround compile_ground(const Term& t, const SymbolTable& symbols) {
  CompiledGround out;
  std::unordered_map<std::string, std::uint32_t> slots;
  out.root = compile_into(out.code, t, slots, [&](const Symbol& sym) {
    const std::uint32_t id = symbols.find(sym);
    if (id == SymbolTable::kUnknown) out.known_symbols = false;
    return id;
  });
  if (!slots.empty()) out.known_symbols = false;
  return out;
}

Evaluator::Evaluator(std::shared_ptr<const RuleBase> base, const Program& program) : base_(std::move(base)) {
  for (const Equation& e : program.equations) {
    require_rule(e);
    std::unordered_map<std::string, std::uint32_t> slots;
    CompiledRule r;
    r.lhs = compile_pattern(e.lhs, slots);
    r.rhs = compile_pattern(e.rhs, slots);
    r.var_count = static_cast<std::uint32_t>(slots.size());
    r.root_symbol = code_.nodes[r.lhs].head;
    rules_.push_back(r);
  }
}

std::uint32_t Evaluator::symbol_id(const Symbol& sym) {
  const std::uint32_t id = base_->symbols().find(sym);
  if (id != SymbolTable::kUnknown) return id;
  const std::uint32_t offset = base_->symbols().size();
  for (std::uint32_t i = 0; i < extra_symbols_.size(); ++i) {
    if (extra_symbols_[i] == sym) return offset + i;
  }
  extra_symbols_.push_back(sym);
  return offset + static_cast<std::uint32_t>(extra_symbols_.size() - 1);
}

std::uint32_t Evaluator::compile_pattern(const Term& t, std::unordered_map<std::string, std::uint32_t>& slots) {
  return compile_into(code_, t, slots, [this](const Symbol& sym) { return symbol_id(sym); });
}

// ---------------------------------------------------------------------------
// The eager machine. Terms live in an arena as immutable cells that may share
// children. Arguments are normalized left to right before the rules at the
// root are tried, which reproduces the leftmost-innermost order step for step.

namespace {

struct Cell {
  std::uint32_t sym;
  std::uint32_t arity;
  std::uint32_t first;  // into Scratch::cell_args
};

// Per-thread buffers reused across calls.
struct Scratch {
  std::vector<Cell> cells;
  std::vector<std::uint32_t> cell_args;
  std::vector<std::uint32_t> bindings;
  std::vector<std::uint32_t> argstack;
  std::vector<std::int8_t> constructor_only;

  void clear() {
    cells.clear();
    cell_args.clear();
    bindings.clear();
    argstack.clear();
    constructor_only.clear();
  }
};

thread_local Scratch tls_scratch;

}  // namespace

class Machine {
 public:
  Machine(const Evaluator& ev, EvalBudget budget)
      : ev_(ev),
        base_(*ev.base_),
        s_(tls_scratch),
        step_limit_(std::min(budget.max_rewrite_steps, budget.max_redex_searches)),
        search_limit_(budget.max_redex_searches),
        base_size_(base_.symbols().size()),
        local_offset_(base_size_ + static_cast<std::uint32_t>(ev.extra_symbols_.size())) {
    s_.clear();
  }

  std::size_t steps() const { return steps_; }
  // The final search that finds no redex must also fit the budget.
  bool final_search_fits() const { return steps_ + 1 <= search_limit_; }

  // Ground code compiled against the base table.
  std::uint32_t eval_ground(const CodeStore& store, std::uint32_t node) {
    const CodeNode& n = store.nodes[node];
    const std::size_t argbase = s_.argstack.size();
    for (std::uint32_t i = 0; i < n.arity; ++i) {
      const std::uint32_t c = eval_ground(store, store.kids[n.first + i]);
      if (c == kFailed) return kFailed;
      s_.argstack.push_back(c);
    }
    return reduce(n.head, argbase);
  }

  std::uint32_t eval_term(const Term& t) {
    if (t.is_var()) return make_cell(local_id(t.name(), true, 0), s_.argstack.size(), 0);
    const std::size_t argbase = s_.argstack.size();
    for (const Term& a : t.args()) {
      const std::uint32_t c = eval_term(a);
      if (c == kFailed) return kFailed;
      s_.argstack.push_back(c);
    }
    return reduce(resolve(t.symbol()), argbase);
  }

  bool equals_ground(std::uint32_t cell, const CodeStore& store, std::uint32_t node) const {
    const CodeNode& n = store.nodes[node];
    const Cell& c = s_.cells[cell];
    if (c.sym != n.head || c.arity != n.arity) return false;
    for (std::uint32_t i = 0; i < n.arity; ++i) {
      if (!equals_ground(s_.cell_args[c.first + i], store, store.kids[n.first + i])) return false;
    }
    return true;
  }

  bool constructor_only(std::uint32_t cell) {
    if (s_.constructor_only.size() < s_.cells.size()) s_.constructor_only.resize(s_.cells.size(), -1);
    std::int8_t& memo = s_.constructor_only[cell];
    if (memo >= 0) return memo != 0;
    const Cell c = s_.cells[cell];
    bool ok = is_constructor_id(c.sym);
    for (std::uint32_t i = 0; ok && i < c.arity; ++i) ok = constructor_only(s_.cell_args[c.first + i]);
    s_.constructor_only[cell] = ok ? 1 : 0;
    return ok;
  }

  Term to_term(std::uint32_t cell, std::vector<std::optional<Term>>& memo) const {
    if (memo[cell]) return *memo[cell];
    const Cell c = s_.cells[cell];
    if (c.sym >= local_offset_ && locals_[c.sym - local_offset_].second) {
      memo[cell] = Term::var(locals_[c.sym - local_offset_].first.name);
    } else {
      std::vector<Term> args;
      args.reserve(c.arity);
      for (std::uint32_t i = 0; i < c.arity; ++i) args.push_back(to_term(s_.cell_args[c.first + i], memo));
      memo[cell] = Term::app(symbol(c.sym), std::move(args));
    }
    return *memo[cell];
  }

  Term to_term(std::uint32_t cell) const {
    std::vector<std::optional<Term>> memo(s_.cells.size());
    return to_term(cell, memo);
  }

 private:
  const Symbol& symbol(std::uint32_t id) const {
    if (id < base_size_) return base_.symbols().symbol(id);
    if (id < local_offset_) return ev_.extra_symbols_[id - base_size_];
    return locals_[id - local_offset_].first;
  }

  bool is_constructor_id(std::uint32_t id) const {
    if (id < base_size_) return base_.symbols().is_constructor(id);
    if (id < local_offset_) return is_constructor(ev_.extra_symbols_[id - base_size_]);
    const auto& [sym, is_var] = locals_[id - local_offset_];
    return is_var || is_constructor(sym);
  }

  std::uint32_t resolve(const Symbol& sym) {
    const std::uint32_t id = base_.symbols().find(sym);
    if (id != SymbolTable::kUnknown) return id;
    for (std::uint32_t i = 0; i < ev_.extra_symbols_.size(); ++i) {
      if (ev_.extra_symbols_[i] == sym) return base_size_ + i;
    }
    return local_id(sym.name, false, sym.arity);
  }

  // Symbols unknown to the evaluator, and variables of the input term, which
  // behave as opaque constants.
  std::uint32_t local_id(const std::string& name, bool is_var, std::size_t arity) {
    for (std::uint32_t i = 0; i < locals_.size(); ++i) {
      if (locals_[i].second == is_var && locals_[i].first.name == name && locals_[i].first.arity == arity) {
        return local_offset_ + i;
      }
    }
    locals_.push_back({Symbol{name, arity}, is_var});
    return local_offset_ + static_cast<std::uint32_t>(locals_.size() - 1);
  }

  std::uint32_t make_cell(std::uint32_t sym, std::size_t argbase, std::uint32_t arity) {
    const auto first = static_cast<std::uint32_t>(s_.cell_args.size());
    s_.cell_args.insert(s_.cell_args.end(), s_.argstack.begin() + static_cast<std::ptrdiff_t>(argbase),
                        s_.argstack.begin() + static_cast<std::ptrdiff_t>(argbase + arity));
    s_.argstack.resize(argbase);
    s_.cells.push_back(Cell{sym, arity, first});
    return static_cast<std::uint32_t>(s_.cells.size() - 1);
  }

  bool equal_cells(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return true;
    const Cell& x = s_.cells[a];
    const Cell& y = s_.cells[b];
    if (x.sym != y.sym || x.arity != y.arity) return false;
    for (std::uint32_t i = 0; i < x.arity; ++i) {
      if (!equal_cells(s_.cell_args[x.first + i], s_.cell_args[y.first + i])) return false;
    }
    return true;
  }

  bool match(const CodeStore& store, std::uint32_t node, std::uint32_t cell, std::size_t frame) {
    const CodeNode& n = store.nodes[node];
    if (n.is_var()) {
      std::uint32_t& slot = s_.bindings[frame + n.head];
      if (slot == kUnbound) {
        slot = cell;
        return true;
      }
      return equal_cells(slot, cell);
    }
    const Cell& c = s_.cells[cell];
    if (c.sym != n.head || c.arity != n.arity) return false;
    for (std::uint32_t i = 0; i < n.arity; ++i) {
      if (!match(store, store.kids[n.first + i], s_.cell_args[c.first + i], frame)) return false;
    }
    return true;
  }

  bool match_args(const CodeStore& store, const CompiledRule& r, std::size_t argbase, std::size_t frame) {
    const CodeNode& lhs = store.nodes[r.lhs];
    std::fill(s_.bindings.begin() + static_cast<std::ptrdiff_t>(frame), s_.bindings.end(), kUnbound);
    for (std::uint32_t i = 0; i < lhs.arity; ++i) {
      if (!match(store, store.kids[lhs.first + i], s_.argstack[argbase + i], frame)) return false;
    }
    return true;
  }

  // Instance of rhs code under the frame, normalized.
  std::uint32_t instantiate(const CodeStore& store, std::uint32_t node, std::size_t frame) {
    const CodeNode& n = store.nodes[node];
    if (n.is_var()) return s_.bindings[frame + n.head];
    const std::size_t argbase = s_.argstack.size();
    for (std::uint32_t i = 0; i < n.arity; ++i) {
      const std::uint32_t c = instantiate(store, store.kids[n.first + i], frame);
      if (c == kFailed) return kFailed;
      s_.argstack.push_back(c);
    }
    return reduce(n.head, argbase);
  }

  // Finds the first rule for `sym` whose lhs matches the arguments at argbase.
  // On success the bindings are left in a frame pushed at the returned offset.
  const CompiledRule* find_rule(std::uint32_t sym, std::size_t argbase, std::size_t frame, const CodeStore*& store) {
    for (const CompiledRule& r : ev_.rules_) {
      if (r.root_symbol != sym) continue;
      s_.bindings.resize(frame + r.var_count);
      if (match_args(ev_.code_, r, argbase, frame)) {
        store = &ev_.code_;
        return &r;
      }
    }
    if (sym < base_size_) {
      for (std::uint32_t i : base_.rules_for(sym)) {
        const CompiledRule& r = base_.rules()[i];
        s_.bindings.resize(frame + r.var_count);
        if (match_args(base_.code(), r, argbase, frame)) {
          store = &base_.code();
          return &r;
        }
      }
    }
    s_.bindings.resize(frame);
    return nullptr;
  }

  // Normal form of sym(args), where args are normal forms on the argstack from
  // argbase. Pops the arguments.
  std::uint32_t reduce(std::uint32_t sym, std::size_t argbase) {
    while (true) {
      const std::size_t frame = s_.bindings.size();
      const CodeStore* store = nullptr;
      const CompiledRule* rule = find_rule(sym, argbase, frame, store);
      const auto arity = static_cast<std::uint32_t>(s_.argstack.size() - argbase);
      if (rule == nullptr) return make_cell(sym, argbase, arity);
      if (steps_ + 1 > step_limit_) return kFailed;
      ++steps_;
      s_.argstack.resize(argbase);
      const CodeNode& rhs = store->nodes[rule->rhs];
      if (rhs.is_var()) {
        const std::uint32_t c = s_.bindings[frame + rhs.head];
        s_.bindings.resize(frame);
        return c;
      }
      // Normalize the rhs arguments, then loop on its root.
      for (std::uint32_t i = 0; i < rhs.arity; ++i) {
        const std::uint32_t c = instantiate(*store, store->kids[rhs.first + i], frame);
        if (c == kFailed) return kFailed;
        s_.argstack.push_back(c);
      }
      s_.bindings.resize(frame);
      sym = rhs.head;
    }
  }

  const Evaluator& ev_;
  const RuleBase& base_;
  Scratch& s_;
  std::size_t step_limit_;
  std::size_t search_limit_;
  std::uint32_t base_size_;
  std::uint32_t local_offset_;
  std::vector<std::pair<Symbol, bool>> locals_;
  std::size_t steps_ = 0;
};

EvalOutcome Evaluator::normalize(const Term& t, EvalBudget budget) const {
  Machine m(*this, budget);
  const std::uint32_t cell = m.eval_term(t);
  if (cell == kFailed || !m.final_search_fits()) return EvalOutcome{EvalStatus::BudgetExhausted, std::nullopt, m.steps()};
  const EvalStatus status = m.constructor_only(cell) ? EvalStatus::NormalForm : EvalStatus::Stuck;
  return EvalOutcome{status, m.to_term(cell), m.steps()};
}

DeductionStatus Evaluator::check(const Example& e, EvalBudget budget) const {
  const CompiledGround lhs = compile_ground(e.lhs, base_->symbols());
  const CompiledGround rhs = compile_ground(e.rhs, base_->symbols());
  if (lhs.known_symbols && rhs.known_symbols) return check(lhs, rhs, budget);
  const EvalOutcome out = normalize(e.lhs, budget);
  if (out.status == EvalStatus::BudgetExhausted) return DeductionStatus::BudgetExhausted;
  return *out.term == e.rhs ? DeductionStatus::Deduced : DeductionStatus::Failed;
}

DeductionStatus Evaluator::check(const CompiledGround& lhs, const CompiledGround& rhs, EvalBudget budget) const {
  if (!lhs.known_symbols || !rhs.known_symbols) {
    throw std::invalid_argument("compiled example uses symbols unknown to the rule base");
  }
  Machine m(*this, budget);
  const std::uint32_t cell = m.eval_ground(lhs.code, lhs.root);
  if (cell == kFailed || !m.final_search_fits()) return DeductionStatus::BudgetExhausted;
  return m.equals_ground(cell, rhs.code, rhs.root) ? DeductionStatus::Deduced : DeductionStatus::Failed;
}

}  // namespace rsynth
