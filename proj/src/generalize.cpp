#include "rsynth/generalize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "rsynth/syntax.hpp"

namespace rsynth {

namespace {

struct Slot {
  Occurrence at;
  Term subterm;
};

class Enumerator {
 public:
  explicit Enumerator(const Term& eq) : eq_(eq) {
    for (Occurrence& u : occurrences(eq)) {
      if (u.is_root()) continue;
      Term sub = subterm_at(eq, u);
      slots_.push_back(Slot{std::move(u), std::move(sub)});
    }
  }

  std::vector<Equation> run() {
    visit(0);
    return std::move(out_);
  }

 private:
  void visit(std::size_t i) {
    if (i == slots_.size()) {
      emit();
      return;
    }
    const Slot& slot = slots_[i];
    for (std::size_t r : chosen_) {
      if (slots_[r].at.is_prefix_of(slot.at)) {
        visit(i + 1);  // inside a replaced subterm
        return;
      }
    }
    visit(i + 1);
    chosen_.push_back(i);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!(classes_[c] == slot.subterm)) continue;
      label_.push_back(c);
      visit(i + 1);
      label_.pop_back();
    }
    classes_.push_back(slot.subterm);
    label_.push_back(classes_.size() - 1);
    visit(i + 1);
    label_.pop_back();
    classes_.pop_back();
    chosen_.pop_back();
  }

  void emit() {
    Term t = eq_;
    for (std::size_t k = 0; k < chosen_.size(); ++k) {
      t = replace_at(t, slots_[chosen_[k]].at, Term::var("V" + std::to_string(label_[k])));
    }
    Equation e = canonical_rename(Equation::from_term(t));
    if (seen_.insert(print_equation(e)).second) out_.push_back(std::move(e));
  }

  Term eq_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> chosen_;  // replaced slot indices, in pre-order
  std::vector<std::size_t> label_;   // class of each chosen slot
  std::vector<Term> classes_;        // subterm held by each class
  std::set<std::string> seen_;
  std::vector<Equation> out_;
};

void require_ground(const Example& e) {
  if (!e.lhs.is_ground() || !e.rhs.is_ground()) {
    throw std::invalid_argument("generalization needs a ground equation: " + print_equation(e));
  }
}

}  // namespace

std::vector<Equation> generalizations(const Example& e) {
  require_ground(e);
  return Enumerator(e.as_term()).run();
}

std::vector<Equation> restricted_generalizations(const Example& e) {
  std::vector<Equation> out;
  for (Equation& g : generalizations(e)) {
    if (is_program_legal(g)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Equation> generalization_pool(const Dataset& d) {
  std::vector<Equation> pool;
  std::set<std::string> seen;
  for (const Example& e : d.positive_basic) {
    for (Equation& g : restricted_generalizations(e)) {
      if (seen.insert(print_equation(g)).second) pool.push_back(std::move(g));
    }
  }
  return pool;
}

std::vector<Program> initial_population(const Dataset& d, std::size_t min_size, Rng& rng) {
  if (min_size == 0) throw std::invalid_argument("minimum population size must be positive");
  const std::vector<Equation> pool = generalization_pool(d);
  if (pool.empty()) throw EmptyPool("no example yields a restricted generalization");
  std::vector<Program> population;
  population.reserve(std::max(min_size, pool.size()));
  for (const Equation& e : pool) population.push_back(Program{{e}});
  while (population.size() < min_size) population.push_back(Program{{pool[rng.index(pool.size())]}});
  return population;
}

}  // namespace rsynth
