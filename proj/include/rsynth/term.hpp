#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsynth {

/// A function symbol with a fixed arity. Equality is by (name, arity).
struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Constructor symbols of the language. Everything else is a defined function.
inline const std::string kZeroName = "0";
inline const std::string kSuccName = "s";
inline const std::string kConsName = "•";  // bullet, the list dot
inline const std::string kNilName = "[]";
inline const std::string kEqName = "=";

bool is_constructor(const Symbol& sym);

/// Raised when an occurrence does not address a subterm.
class InvalidOccurrence : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Immutable first-order term: a variable or a symbol applied to arguments.
/// Copies are cheap (shared nodes); sharing is never observable.
class Term {
 public:
  static Term var(std::string name);
  static Term app(Symbol sym, std::vector<Term> args);
  static Term app(std::string name, std::vector<Term> args);
  static Term constant(std::string name);

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_constant() const { return is_app() && node_->args.empty(); }

  /// Variable name or symbol name.
  const std::string& name() const { return node_->name; }
  Symbol symbol() const;
  std::size_t arity() const { return node_->args.size(); }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  /// Number of variable and symbol nodes (saturating).
  std::size_t node_count() const { return node_->node_count; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  bool is_ground() const { return node_->ground; }

  bool same_node(const Term& other) const { return node_ == other.node_; }
  /// Address of the shared node; stable while some copy of the term lives.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  /// Total order: variables before applications, then by name, arity, args.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    bool ground = true;
    std::string name;
    std::vector<Term> args;
    std::size_t node_count = 1;
    std::size_t depth = 1;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Path from the root; the empty path is the root occurrence (Lambda).
/// Steps are 1-based argument positions.
struct Occurrence {
  std::vector<std::size_t> path;

  bool is_root() const { return path.empty(); }
  Occurrence child(std::size_t position) const;
  bool is_prefix_of(const Occurrence& other) const;
  std::string to_string() const;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  /// Lexicographic on the path (the leftmost order).
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// All occurrences of t in pre-order (which is also lexicographic order).
std::vector<Occurrence> occurrences(const Term& t);
/// Occurrences whose subterm is not a variable.
std::vector<Occurrence> non_var_occurrences(const Term& t);
const Term& subterm_at(const Term& t, const Occurrence& u);
Term replace_at(const Term& t, const Occurrence& u, const Term& s);

/// Variables in first-occurrence (pre-order) order, without repeats.
std::vector<std::string> variables(const Term& t);
void collect_variables(const Term& t, std::set<std::string>& out);
bool occurs_in(const std::string& var, const Term& t);
bool contains_symbol(const Term& t, const std::string& name);
/// True when t is built from constructors and variables only.
bool is_constructor_term(const Term& t);

/// Finite map from variable names to terms; identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;

  /// Adds x/t. Binding x to itself is a no-op.
  void bind(const std::string& var, Term t);
  const Term* lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.contains(var); }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  /// Keeps only bindings for the given variables.
  Substitution restricted_to(const std::set<std::string>& vars) const;
  bool is_ground() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

Term apply(const Substitution& sigma, const Term& t);
/// (delta o sigma): apply(result, t) == apply(delta, apply(sigma, t)).
Substitution compose(const Substitution& delta, const Substitution& sigma);

/// One-way matching: sigma with apply(sigma, pattern) == subject.
std::optional<Substitution> match(const Term& pattern, const Term& subject);
/// Syntactic most general unifier with occurs check (idempotent).
std::optional<Substitution> unify(const Term& t, const Term& s);

/// Oriented rewrite rule lhs = rhs.
struct Equation {
  Term lhs;
  Term rhs;

  /// The equation viewed as the term =(lhs, rhs).
  Term as_term() const;
  static Equation from_term(const Term& eq);
  std::size_t node_count() const { return lhs.node_count() + rhs.node_count(); }

  friend bool operator==(const Equation&, const Equation&) = default;
};

/// Root of lhs is a non-constant defined function and Var(rhs) is within Var(lhs).
bool is_program_legal(const Equation& e);
/// Variables of rhs that are missing from lhs.
std::vector<std::string> orphan_variables(const Equation& e);
/// lhs is f(c1,...,cn) with constructor-term arguments.
bool has_pattern_lhs(const Equation& e);
/// rhs mentions the lhs root symbol.
bool is_recursive(const Equation& e);

/// Fresh-variable source. Names are a prefix plus a counter, skipping any name
/// the caller asks to avoid.
class VariableGenerator {
 public:
  explicit VariableGenerator(std::string prefix = "N", std::set<std::string> avoid = {});
  Term next();
  void avoid(const std::string& name) { avoid_.insert(name); }

 private:
  std::string prefix_;
  std::set<std::string> avoid_;
  std::size_t counter_ = 0;
};

Equation rename_fresh(const Equation& e, VariableGenerator& fresh);

/// Canonical variable names A, B, ..., Z, AA, AB, ... by index.
std::string canonical_var_name(std::size_t index);
/// Renames variables to canonical names in pre-order of =(lhs, rhs).
Equation canonical_rename(const Equation& e);
/// Equal up to a consistent bijective variable renaming.
bool equal_up_to_renaming(const Equation& a, const Equation& b);

/// An individual: an ordered list of equations. Order is evaluation priority.
/// Basic (non-recursive) and recursive equations are distinguished by
/// is_recursive; both live in the same ordered list.
struct Program {
  std::vector<Equation> equations;

  bool empty() const { return equations.empty(); }
  std::size_t size() const { return equations.size(); }
  std::size_t basic_count() const;
  std::size_t recursive_count() const;
  std::vector<Equation> basic() const;
  std::vector<Equation> recursive() const;

  friend bool operator==(const Program&, const Program&) = default;
};

struct ProgramLimits {
  std::size_t max_equation_nodes = 30;
  std::size_t max_basic_equations = 3;
  std::size_t max_recursive_equations = 3;
};

/// Every equation legal with a pattern lhs, within the node budget, and the
/// basic/recursive counts within their caps.
bool is_admissible(const Program& p, const ProgramLimits& limits);

}  // namespace rsynth
