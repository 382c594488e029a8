#include "rsynth/operators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rsynth {

const char* to_string(OperatorId op) {
  switch (op) {
    case OperatorId::GlobalXover: return "global_xover";
    case OperatorId::GlobalSwap: return "global_swap";
    case OperatorId::InternalSwap: return "internal_swap";
    case OperatorId::Equalization: return "equalization";
    case OperatorId::Composition: return "composition";
    case OperatorId::FunctionalSwap: return "functional_swap";
    case OperatorId::FunctionalRename: return "functional_rename";
    case OperatorId::GpXover: return "gp_xover";
    case OperatorId::GpMutation: return "gp_mutation";
  }
  return "?";
}

std::optional<OperatorId> operator_from_string(std::string_view name) {
  for (OperatorId op : kAllOperators) {
    if (name == to_string(op)) return op;
  }
  return std::nullopt;
}

bool needs_mate(OperatorId op) {
  return op == OperatorId::GlobalXover || op == OperatorId::Equalization || op == OperatorId::GpXover;
}

namespace {

void collect_symbols(const Term& t, std::set<Symbol>& out) {
  if (t.is_var()) return;
  out.insert(t.symbol());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

std::set<Symbol> program_symbols(const Program& p) {
  std::set<Symbol> out;
  for (const Equation& e : p.equations) {
    collect_symbols(e.lhs, out);
    collect_symbols(e.rhs, out);
  }
  return out;
}

OperatorOutcome unchanged(const Program& p) { return OperatorOutcome{{p}, false}; }

// Canonical variable names, then drop whatever breaks the program limits.
OperatorOutcome finish(std::vector<Program> candidates, const Program& parent, const ProgramLimits& limits) {
  OperatorOutcome out;
  for (Program& p : candidates) {
    for (Equation& e : p.equations) e = canonical_rename(e);
    if (is_admissible(p, limits)) out.offspring.push_back(std::move(p));
  }
  if (out.offspring.empty()) return unchanged(parent);
  out.applied = true;
  return out;
}

std::vector<Equation> inserted(std::vector<Equation> eqs, std::size_t pos, Equation e) {
  eqs.insert(eqs.begin() + static_cast<std::ptrdiff_t>(pos), std::move(e));
  return eqs;
}

Term with_symbol(const Term& t, const Symbol& sym) {
  return Term::app(sym, std::vector<Term>(t.args().begin(), t.args().end()));
}

Term with_args(const Term& t, std::vector<Term> args) { return Term::app(t.symbol(), std::move(args)); }

// Occurrences of =(lhs, rhs) other than the root and the lhs root.
std::vector<Occurrence> inner_occurrences(const Term& eq) {
  std::vector<Occurrence> out;
  for (Occurrence& u : occurrences(eq)) {
    if (u.is_root() || u.path == std::vector<std::size_t>{1}) continue;
    out.push_back(std::move(u));
  }
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.index(items.size())];
}

Term replace_constants(const Term& t, const std::vector<std::string>& vars, double probability, Rng& rng) {
  if (t.is_var()) return t;
  if (t.is_constant()) return rng.coin(probability) ? Term::var(pick(vars, rng)) : t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(replace_constants(a, vars, probability, rng));
  return with_args(t, std::move(args));
}

Program merge_programs(const Program& p1, const Program& p2) {
  Program merged = p1;
  for (const Equation& e : p2.equations) {
    const bool present = std::any_of(merged.equations.begin(), merged.equations.end(),
                                     [&](const Equation& f) { return equal_up_to_renaming(e, f); });
    if (!present) merged.equations.push_back(e);
  }
  return merged;
}

std::set<std::string> equation_variables(const Equation& e) {
  std::set<std::string> vars;
  collect_variables(e.lhs, vars);
  collect_variables(e.rhs, vars);
  return vars;
}

// Shared by equalization and composition: candidates from one receptor and one
// emitter, each inserted into `host` at a random position.
std::vector<Program> receptor_emitter_offspring(const Equation& receptor_raw, const Equation& emitter_raw,
                                                const Program& host, const OperatorContext& ctx, Rng& rng) {
  const Equation receptor = equalization_preprocess(receptor_raw, ctx.constant_replacement, rng);
  VariableGenerator fresh("N", equation_variables(receptor));
  const Equation emitter = equalization_preprocess(rename_fresh(emitter_raw, fresh), ctx.constant_replacement, rng);
  std::vector<Program> out;
  for (Equation& c : equalization_candidates(receptor, emitter, rng)) {
    const std::size_t pos = rng.index(host.equations.size() + 1);
    out.push_back(Program{inserted(host.equations, pos, std::move(c))});
  }
  return out;
}

}  // namespace

OperatorContext make_operator_context(const Dataset& d, const ProgramLimits& limits, std::size_t gp_max_depth) {
  OperatorContext ctx;
  ctx.limits = limits;
  ctx.background = d.background;
  ctx.gp_max_depth = gp_max_depth;
  std::set<Symbol> symbols = program_symbols(d.background);
  for (const Example& e : d.all_examples()) {
    collect_symbols(e.lhs, symbols);
    collect_symbols(e.rhs, symbols);
  }
  ctx.signature.assign(symbols.begin(), symbols.end());
  return ctx;
}

std::optional<Equation> repair_orphans(const Equation& e, Rng& rng) {
  const std::vector<std::string> orphans = orphan_variables(e);
  if (orphans.empty()) return e;
  const std::vector<std::string> lhs_vars = variables(e.lhs);
  if (lhs_vars.empty()) return std::nullopt;
  Substitution sigma;
  for (const std::string& x : orphans) sigma.bind(x, Term::var(pick(lhs_vars, rng)));
  return Equation{e.lhs, apply(sigma, e.rhs)};
}

Equation equalization_preprocess(const Equation& e, double constant_probability, Rng& rng) {
  const std::vector<std::string> lhs_vars = variables(e.lhs);
  if (lhs_vars.empty() || e.lhs.is_var()) return e;
  // Constants only ever become existing lhs variables, so Var(lhs) is stable.
  std::vector<Term> lhs_args;
  for (const Term& a : e.lhs.args()) lhs_args.push_back(replace_constants(a, lhs_vars, constant_probability, rng));
  const Term rhs = repair_orphans(e, rng)->rhs;
  return Equation{with_args(e.lhs, std::move(lhs_args)), replace_constants(rhs, lhs_vars, constant_probability, rng)};
}

std::vector<Equation> equalization_candidates(const Equation& receptor, const Equation& emitter, Rng& rng) {
  std::vector<Equation> out;
  for (const Occurrence& w : occurrences(receptor.rhs)) {
    if (!unify(subterm_at(receptor.rhs, w), emitter.rhs)) continue;
    Equation c{receptor.lhs, replace_at(receptor.rhs, w, emitter.lhs)};
    if (auto repaired = repair_orphans(c, rng)) out.push_back(std::move(*repaired));
  }
  return out;
}

OperatorOutcome global_xover(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng) {
  if (p1.empty() || p2.empty()) return unchanged(p1);
  const std::size_t i = rng.index(p1.size());
  const bool recursive = is_recursive(p1.equations[i]);
  std::vector<std::size_t> same_class;
  for (std::size_t k = 0; k < p2.size(); ++k) {
    if (is_recursive(p2.equations[k]) == recursive) same_class.push_back(k);
  }
  const std::size_t j = same_class.empty() ? rng.index(p2.size()) : pick(same_class, rng);

  std::vector<Equation> rest1 = p1.equations;
  rest1.erase(rest1.begin() + static_cast<std::ptrdiff_t>(i));
  std::vector<Equation> rest2 = p2.equations;
  rest2.erase(rest2.begin() + static_cast<std::ptrdiff_t>(j));
  const std::size_t pos1 = rng.index(rest1.size() + 1);
  const std::size_t pos2 = rng.index(rest2.size() + 1);
  return finish({Program{inserted(std::move(rest1), pos1, p2.equations[j])},
                 Program{inserted(std::move(rest2), pos2, p1.equations[i])}},
                p1, ctx.limits);
}

OperatorOutcome global_swap(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.size() < 2) return unchanged(p);
  const std::size_t i = rng.index(p.size());
  std::size_t j = rng.index(p.size() - 1);
  if (j >= i) ++j;
  Program q = p;
  std::swap(q.equations[i], q.equations[j]);
  return finish({std::move(q)}, p, ctx.limits);
}

OperatorOutcome internal_swap(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.empty()) return unchanged(p);
  const std::size_t k = rng.index(p.size());
  const Term eq = p.equations[k].as_term();
  std::vector<Occurrence> sites;
  for (Occurrence& u : occurrences(eq)) {
    if (!u.is_root() && subterm_at(eq, u).arity() >= 2) sites.push_back(std::move(u));
  }
  if (sites.empty()) return unchanged(p);
  const Occurrence& u = pick(sites, rng);
  const Term& f = subterm_at(eq, u);
  const std::size_t i = rng.index(f.arity());
  std::size_t j = rng.index(f.arity() - 1);
  if (j >= i) ++j;
  std::vector<Term> args(f.args().begin(), f.args().end());
  std::swap(args[i], args[j]);
  Program q = p;
  q.equations[k] = Equation::from_term(replace_at(eq, u, with_args(f, std::move(args))));
  return finish({std::move(q)}, p, ctx.limits);
}

OperatorOutcome equalization(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng) {
  if (p1.empty() || p2.empty()) return unchanged(p1);
  const Equation& receptor = pick(p1.equations, rng);
  const Equation& emitter = pick(p2.equations, rng);
  return finish(receptor_emitter_offspring(receptor, emitter, merge_programs(p1, p2), ctx, rng), p1, ctx.limits);
}

OperatorOutcome composition(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.empty() || ctx.background.empty()) return unchanged(p);
  const Equation& receptor = pick(p.equations, rng);
  const Equation& emitter = pick(ctx.background.equations, rng);
  return finish(receptor_emitter_offspring(receptor, emitter, p, ctx, rng), p, ctx.limits);
}

OperatorOutcome functional_swap(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.empty()) return unchanged(p);
  // Calls of defined functions below the lhs root, over the whole individual.
  struct Call {
    std::size_t equation;
    Occurrence at;
    Symbol symbol;
  };
  std::vector<Term> eqs;
  std::vector<Call> calls;
  for (std::size_t k = 0; k < p.size(); ++k) {
    eqs.push_back(p.equations[k].as_term());
    for (Occurrence& u : inner_occurrences(eqs[k])) {
      const Term& t = subterm_at(eqs[k], u);
      if (t.is_app() && !is_constructor(t.symbol())) calls.push_back(Call{k, std::move(u), t.symbol()});
    }
  }
  const std::size_t k = rng.index(p.size());
  std::vector<const Call*> own;
  for (const Call& c : calls) {
    if (c.equation == k) own.push_back(&c);
  }
  if (own.empty()) return unchanged(p);
  const Call& first = *pick(own, rng);

  std::set<Symbol> choices_set;
  for (const Call& c : calls) {
    if (c.symbol.arity == first.symbol.arity && c.symbol != first.symbol) choices_set.insert(c.symbol);
  }
  if (choices_set.empty()) return unchanged(p);
  const std::vector<Symbol> choices(choices_set.begin(), choices_set.end());
  const Symbol& f2 = pick(choices, rng);
  std::vector<const Call*> partners;
  for (const Call& c : calls) {
    if (c.symbol == f2) partners.push_back(&c);
  }
  const Call& second = *pick(partners, rng);

  // The two calls trade symbols, so the individual keeps its symbol multiset.
  eqs[first.equation] = replace_at(eqs[first.equation], first.at, with_symbol(subterm_at(eqs[first.equation], first.at), f2));
  eqs[second.equation] =
      replace_at(eqs[second.equation], second.at, with_symbol(subterm_at(eqs[second.equation], second.at), first.symbol));
  Program q = p;
  q.equations[first.equation] = Equation::from_term(eqs[first.equation]);
  q.equations[second.equation] = Equation::from_term(eqs[second.equation]);
  return finish({std::move(q)}, p, ctx.limits);
}

OperatorOutcome functional_rename(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.empty()) return unchanged(p);
  const std::size_t k = rng.index(p.size());
  const Term eq = p.equations[k].as_term();
  auto wrapped = [](const Term& t) { return t.is_app() && t.arity() == 1; };
  std::vector<Occurrence> sites;
  for (Occurrence& u : occurrences(eq)) {
    if (u.is_root()) continue;
    const Term& t = subterm_at(eq, u);
    if (t.arity() >= 2 && std::any_of(t.args().begin(), t.args().end(), wrapped)) sites.push_back(std::move(u));
  }
  if (sites.empty()) return unchanged(p);
  const Occurrence& u = pick(sites, rng);
  const Term& g = subterm_at(eq, u);
  std::vector<std::size_t> unary_args;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (wrapped(g.args()[i])) unary_args.push_back(i);
  }
  const std::size_t i = pick(unary_args, rng);
  std::size_t j = rng.index(g.arity() - 1);
  if (j >= i) ++j;
  std::vector<Term> args(g.args().begin(), g.args().end());
  const Term h = args[i];
  args[i] = h.args()[0];
  args[j] = Term::app(h.symbol(), {args[j]});
  Program q = p;
  q.equations[k] = Equation::from_term(replace_at(eq, u, with_args(g, std::move(args))));
  return finish({std::move(q)}, p, ctx.limits);
}

OperatorOutcome gp_xover(const Program& p1, const Program& p2, const OperatorContext& ctx, Rng& rng) {
  if (p1.empty() || p2.empty()) return unchanged(p1);
  const std::size_t i = rng.index(p1.size());
  const std::size_t j = rng.index(p2.size());
  const Term t1 = p1.equations[i].as_term();
  const Term t2 = p2.equations[j].as_term();
  const Occurrence u = pick(inner_occurrences(t1), rng);
  const Occurrence v = pick(inner_occurrences(t2), rng);
  std::vector<Program> candidates;
  auto add = [&](const Program& parent, std::size_t at, const Term& swapped) {
    if (auto e = repair_orphans(Equation::from_term(swapped), rng)) {
      Program q = parent;
      q.equations[at] = std::move(*e);
      candidates.push_back(std::move(q));
    }
  };
  add(p1, i, replace_at(t1, u, subterm_at(t2, v)));
  add(p2, j, replace_at(t2, v, subterm_at(t1, u)));
  return finish(std::move(candidates), p1, ctx.limits);
}

OperatorOutcome gp_mutation(const Program& p, const OperatorContext& ctx, Rng& rng) {
  if (p.empty()) return unchanged(p);
  const std::size_t k = rng.index(p.size());
  const Equation& e = p.equations[k];
  const Term eq = e.as_term();
  const Occurrence u = pick(inner_occurrences(eq), rng);
  std::vector<std::string> vars = variables(e.lhs);
  std::vector<Symbol> symbols;
  if (u.path.front() == 1) {
    // Inside the lhs pattern: constructors only, plus one fresh variable.
    for (const Symbol& s : ctx.signature) {
      if (is_constructor(s)) symbols.push_back(s);
    }
    VariableGenerator fresh("N", equation_variables(e));
    vars.push_back(fresh.next().name());
  } else {
    symbols = ctx.signature;
  }
  if (vars.empty() && std::none_of(symbols.begin(), symbols.end(), [](const Symbol& s) { return s.arity == 0; })) {
    return unchanged(p);
  }
  const Term grown = random_tree(TreeMethod::Grow, ctx.gp_max_depth, symbols, vars, rng);
  auto mutated = repair_orphans(Equation::from_term(replace_at(eq, u, grown)), rng);
  if (!mutated) return unchanged(p);
  Program q = p;
  q.equations[k] = std::move(*mutated);
  return finish({std::move(q)}, p, ctx.limits);
}

OperatorOutcome apply_operator(OperatorId op, const Program& p, const Program& mate, const OperatorContext& ctx,
                               Rng& rng) {
  switch (op) {
    case OperatorId::GlobalXover: return global_xover(p, mate, ctx, rng);
    case OperatorId::GlobalSwap: return global_swap(p, ctx, rng);
    case OperatorId::InternalSwap: return internal_swap(p, ctx, rng);
    case OperatorId::Equalization: return equalization(p, mate, ctx, rng);
    case OperatorId::Composition: return composition(p, ctx, rng);
    case OperatorId::FunctionalSwap: return functional_swap(p, ctx, rng);
    case OperatorId::FunctionalRename: return functional_rename(p, ctx, rng);
    case OperatorId::GpXover: return gp_xover(p, mate, ctx, rng);
    case OperatorId::GpMutation: return gp_mutation(p, ctx, rng);
  }
  throw std::logic_error("unknown operator");
}

Term random_tree(TreeMethod method, std::size_t depth, std::span<const Symbol> signature,
                 std::span<const std::string> variables, Rng& rng) {
  if (depth == 0) throw std::invalid_argument("tree depth must be positive");
  std::vector<const Symbol*> functions;
  std::vector<const Symbol*> constants;
  for (const Symbol& s : signature) (s.arity == 0 ? constants : functions).push_back(&s);
  const std::size_t terminals = constants.size() + variables.size();
  if (terminals == 0) throw std::invalid_argument("random tree needs a constant or a variable");

  auto leaf = [&]() {
    const std::size_t r = rng.index(terminals);
    return r < constants.size() ? Term::constant(constants[r]->name) : Term::var(variables[r - constants.size()]);
  };
  if (depth == 1 || functions.empty()) return leaf();
  const Symbol* f = nullptr;
  if (method == TreeMethod::Full) {
    f = functions[rng.index(functions.size())];
  } else {
    const std::size_t r = rng.index(functions.size() + terminals);
    if (r >= functions.size()) return leaf();
    f = functions[r];
  }
  std::vector<Term> args;
  args.reserve(f->arity);
  for (std::size_t i = 0; i < f->arity; ++i) args.push_back(random_tree(method, depth - 1, signature, variables, rng));
  return Term::app(*f, std::move(args));
}

std::vector<Term> ramped_half_and_half(std::size_t count, std::size_t max_depth, std::span<const Symbol> signature,
                                       std::span<const std::string> variables, Rng& rng) {
  if (max_depth == 0) throw std::invalid_argument("tree depth must be positive");
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t depth = 1 + (i / 2) % max_depth;
    const TreeMethod method = i % 2 == 0 ? TreeMethod::Full : TreeMethod::Grow;
    out.push_back(random_tree(method, depth, signature, variables, rng));
  }
  return out;
}

}  // namespace rsynth
