#include "rsynth/term.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace rsynth {

namespace {

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_constructor(const Symbol& sym) {
  return (sym.name == kZeroName && sym.arity == 0) || (sym.name == kSuccName && sym.arity == 1) ||
         (sym.name == kConsName && sym.arity == 2) || (sym.name == kNilName && sym.arity == 0);
}

// ---------------------------------------------------------------------------
// Term

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->ground = false;
  node->hash = mix(std::hash<std::string>{}(name), 0x51);
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(Symbol sym, std::vector<Term> args) {
  if (sym.name.empty()) throw std::invalid_argument("symbol name must be non-empty");
  if (sym.arity != args.size()) {
    throw std::invalid_argument("symbol " + sym.name + "/" + std::to_string(sym.arity) + " applied to " +
                                std::to_string(args.size()) + " arguments");
  }
  auto node = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(sym.name), args.size());
  std::size_t depth = 0;
  for (const Term& a : args) {
    node->node_count = saturating_add(node->node_count, a.node_count());
    node->ground = node->ground && a.is_ground();
    depth = std::max(depth, a.depth());
    h = mix(h, a.hash());
  }
  node->depth = depth + 1;
  node->hash = h;
  node->name = std::move(sym.name);
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::app(std::string name, std::vector<Term> args) {
  const std::size_t n = args.size();
  return app(Symbol{std::move(name), n}, std::move(args));
}

Term Term::constant(std::string name) { return app(Symbol{std::move(name), 0}, {}); }

Symbol Term::symbol() const {
  if (is_var()) throw std::logic_error("variable " + name() + " has no symbol");
  return Symbol{node_->name, node_->args.size()};
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.is_var() != b.is_var() || a.name() != b.name() || a.arity() != b.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.args()[i] == b.args()[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Occurrences

Occurrence Occurrence::child(std::size_t position) const {
  Occurrence o = *this;
  o.path.push_back(position);
  return o;
}

bool Occurrence::is_prefix_of(const Occurrence& other) const {
  return path.size() <= other.path.size() && std::equal(path.begin(), path.end(), other.path.begin());
}

std::string Occurrence::to_string() const {
  if (path.empty()) return "Λ";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

namespace {

void collect_occurrences(const Term& t, Occurrence& at, bool skip_vars, std::vector<Occurrence>& out) {
  if (!(skip_vars && t.is_var())) out.push_back(at);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    at.path.push_back(i + 1);
    collect_occurrences(t.args()[i], at, skip_vars, out);
    at.path.pop_back();
  }
}

Term replace_rec(const Term& t, const Occurrence& u, std::size_t depth, const Term& s) {
  if (depth == u.path.size()) return s;
  const std::size_t pos = u.path[depth];
  if (pos == 0 || pos > t.arity()) throw InvalidOccurrence("occurrence " + u.to_string() + " is not valid");
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[pos - 1] = replace_rec(args[pos - 1], u, depth + 1, s);
  return Term::app(t.symbol(), std::move(args));
}

void variables_rec(const Term& t, std::vector<std::string>& order, std::set<std::string>& seen) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    if (seen.insert(t.name()).second) order.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) variables_rec(a, order, seen);
}

}  // namespace

std::vector<Occurrence> occurrences(const Term& t) {
  std::vector<Occurrence> out;
  Occurrence at;
  collect_occurrences(t, at, false, out);
  return out;
}

std::vector<Occurrence> non_var_occurrences(const Term& t) {
  std::vector<Occurrence> out;
  Occurrence at;
  collect_occurrences(t, at, true, out);
  return out;
}

const Term& subterm_at(const Term& t, const Occurrence& u) {
  const Term* cur = &t;
  for (std::size_t pos : u.path) {
    if (pos == 0 || pos > cur->arity()) throw InvalidOccurrence("occurrence " + u.to_string() + " is not valid");
    cur = &cur->args()[pos - 1];
  }
  return *cur;
}

Term replace_at(const Term& t, const Occurrence& u, const Term& s) { return replace_rec(t, u, 0, s); }

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  variables_rec(t, order, seen);
  return order;
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

bool occurs_in(const std::string& var, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs_in(var, a); });
}

bool contains_symbol(const Term& t, const std::string& name) {
  if (t.is_var()) return false;
  if (t.name() == name) return true;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return contains_symbol(a, name); });
}

bool is_constructor_term(const Term& t) {
  if (t.is_var()) return true;
  if (!is_constructor(t.symbol())) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_constructor_term);
}

// ---------------------------------------------------------------------------
// Substitutions

void Substitution::bind(const std::string& var, Term t) {
  if (t.is_var() && t.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(t));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Substitution Substitution::restricted_to(const std::set<std::string>& vars) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    if (vars.contains(v)) out.bindings_.emplace(v, t);
  }
  return out;
}

bool Substitution::is_ground() const {
  return std::all_of(bindings_.begin(), bindings_.end(), [](const auto& kv) { return kv.second.is_ground(); });
}

Term apply(const Substitution& sigma, const Term& t) {
  if (sigma.empty() || t.is_ground()) return t;
  if (t.is_var()) {
    const Term* bound = sigma.lookup(t.name());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(sigma, a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::app(t.symbol(), std::move(args)) : t;
}

Substitution compose(const Substitution& delta, const Substitution& sigma) {
  Substitution out;
  for (const auto& [v, t] : sigma.bindings()) out.bind(v, apply(delta, t));
  for (const auto& [v, t] : delta.bindings()) {
    if (!sigma.binds(v)) out.bind(v, t);
  }
  return out;
}

namespace {

bool match_rec(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_var()) {
    if (const Term* bound = sigma.lookup(pattern.name())) return *bound == subject;
    if (subject.is_var() && subject.name() == pattern.name()) {
      // x/x is the identity; remember it so a later occurrence stays consistent.
      return true;
    }
    sigma.bind(pattern.name(), subject);
    return true;
  }
  if (subject.is_var() || pattern.name() != subject.name() || pattern.arity() != subject.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_rec(pattern.args()[i], subject.args()[i], sigma)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_rec(pattern, subject, sigma)) return std::nullopt;
  // A variable matched against itself is not recorded; a second occurrence
  // bound to something else must be rejected.
  if (!(apply(sigma, pattern) == subject)) return std::nullopt;
  return sigma;
}

std::optional<Substitution> unify(const Term& t, const Term& s) {
  // Robinson-style, keeping sigma idempotent by eager propagation.
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{t, s}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = apply(sigma, a);
    b = apply(sigma, b);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs_in(a.name(), b)) return std::nullopt;
      Substitution single;
      single.bind(a.name(), b);
      sigma = compose(single, sigma);
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = 0; i < a.arity(); ++i) work.emplace_back(a.args()[i], b.args()[i]);
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// Equations

Term Equation::as_term() const { return Term::app(Symbol{kEqName, 2}, {lhs, rhs}); }

Equation Equation::from_term(const Term& eq) {
  if (eq.is_var() || eq.name() != kEqName || eq.arity() != 2) {
    throw std::invalid_argument("term is not rooted at '='");
  }
  return Equation{eq.args()[0], eq.args()[1]};
}

bool is_program_legal(const Equation& e) {
  if (e.lhs.is_var() || e.lhs.arity() == 0) return false;
  const Symbol root = e.lhs.symbol();
  if (is_constructor(root) || root.name == kEqName) return false;
  return orphan_variables(e).empty();
}

std::vector<std::string> orphan_variables(const Equation& e) {
  std::set<std::string> lhs_vars;
  collect_variables(e.lhs, lhs_vars);
  std::vector<std::string> out;
  for (const std::string& v : variables(e.rhs)) {
    if (!lhs_vars.contains(v)) out.push_back(v);
  }
  return out;
}

bool has_pattern_lhs(const Equation& e) {
  if (e.lhs.is_var()) return false;
  return std::all_of(e.lhs.args().begin(), e.lhs.args().end(), is_constructor_term);
}

bool is_recursive(const Equation& e) { return !e.lhs.is_var() && contains_symbol(e.rhs, e.lhs.name()); }

// ---------------------------------------------------------------------------
// Renaming

VariableGenerator::VariableGenerator(std::string prefix, std::set<std::string> avoid)
    : prefix_(std::move(prefix)), avoid_(std::move(avoid)) {}

Term VariableGenerator::next() {
  for (;;) {
    std::string name = prefix_ + std::to_string(++counter_);
    if (avoid_.insert(name).second) return Term::var(std::move(name));
  }
}

namespace {

Substitution renaming_for(const std::vector<std::string>& vars, const std::function<Term(std::size_t)>& name_of) {
  Substitution rho;
  for (std::size_t i = 0; i < vars.size(); ++i) rho.bind(vars[i], name_of(i));
  return rho;
}

}  // namespace

Equation rename_fresh(const Equation& e, VariableGenerator& fresh) {
  const std::vector<std::string> vars = variables(e.as_term());
  // Renaming is simultaneous, so a fresh name equal to an old one is harmless.
  Substitution rho = renaming_for(vars, [&](std::size_t) { return fresh.next(); });
  return Equation{apply(rho, e.lhs), apply(rho, e.rhs)};
}

std::string canonical_var_name(std::size_t index) {
  std::string name;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    name.insert(name.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return name;
}

Equation canonical_rename(const Equation& e) {
  const std::vector<std::string> vars = variables(e.as_term());
  Substitution rho = renaming_for(vars, [](std::size_t i) { return Term::var(canonical_var_name(i)); });
  return Equation{apply(rho, e.lhs), apply(rho, e.rhs)};
}

bool equal_up_to_renaming(const Equation& a, const Equation& b) { return canonical_rename(a) == canonical_rename(b); }

// ---------------------------------------------------------------------------
// Programs

std::size_t Program::basic_count() const {
  return static_cast<std::size_t>(std::count_if(equations.begin(), equations.end(),
                                                [](const Equation& e) { return !is_recursive(e); }));
}

std::size_t Program::recursive_count() const { return equations.size() - basic_count(); }

std::vector<Equation> Program::basic() const {
  std::vector<Equation> out;
  std::copy_if(equations.begin(), equations.end(), std::back_inserter(out),
               [](const Equation& e) { return !is_recursive(e); });
  return out;
}

std::vector<Equation> Program::recursive() const {
  std::vector<Equation> out;
  std::copy_if(equations.begin(), equations.end(), std::back_inserter(out), is_recursive);
  return out;
}

bool is_admissible(const Program& p, const ProgramLimits& limits) {
  std::size_t basic = 0;
  std::size_t recursive = 0;
  for (const Equation& e : p.equations) {
    if (!is_program_legal(e) || !has_pattern_lhs(e) || e.node_count() > limits.max_equation_nodes) return false;
    (is_recursive(e) ? recursive : basic) += 1;
  }
  return basic <= limits.max_basic_equations && recursive <= limits.max_recursive_equations;
}

}  // namespace rsynth
