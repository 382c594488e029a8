#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rsynth/rng.hpp"
#include "rsynth/syntax.hpp"
#include "rsynth/term.hpp"

namespace rsynth::testing {

inline Term T(const std::string& s) { return parse_term(s); }
inline Equation E(const std::string& s) { return parse_equation(s); }
inline Program P(const std::string& s) { return parse_program(s); }

// Random term over {0, s/1, f/1, g/2, h/3} and the given variables. Depth is
// counted in levels, a leaf being depth 1.
inline Term random_term(Rng& rng, std::size_t depth, const std::vector<std::string>& vars) {
  static const std::vector<Symbol> functions = {{"s", 1}, {"f", 1}, {"g", 2}, {"h", 3}};
  const bool leaf = depth <= 1 || rng.coin(0.3);
  if (leaf) {
    if (!vars.empty() && rng.coin(0.5)) return Term::var(vars[rng.index(vars.size())]);
    return Term::constant(rng.coin(0.8) ? "0" : "a");
  }
  const Symbol& f = functions[rng.index(functions.size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < f.arity; ++i) args.push_back(random_term(rng, depth - 1, vars));
  return Term::app(f, std::move(args));
}

// Random Peano numeral term built from sum/prod/double/... calls.
inline Term random_arith(Rng& rng, std::size_t depth) {
  static const std::vector<Symbol> functions = {{"sum", 2},    {"prod", 2},   {"double", 1}, {"triple", 1},
                                                {"square", 1}, {"cube", 1},   {"s", 1}};
  if (depth <= 1 || rng.coin(0.35)) return peano(rng.index(4));
  const Symbol& f = functions[rng.index(functions.size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < f.arity; ++i) args.push_back(random_arith(rng, depth - 1));
  return Term::app(f, std::move(args));
}

inline bool is_prefix(const Occurrence& a, const Occurrence& b) {
  return a.path.size() <= b.path.size() && std::equal(a.path.begin(), a.path.end(), b.path.begin());
}

// Brute-force oracle: every antichain of non-root positions of =(lhs,rhs),
// every set partition of it (restricted growth strings), kept when each block
// holds identical subterms; each block becomes one variable.
inline std::set<std::string> brute_force_generalizations(const Equation& e) {
  const Term eq = e.as_term();
  std::vector<Occurrence> positions;
  for (const Occurrence& o : occurrences(eq)) {
    if (!o.is_root()) positions.push_back(o);
  }
  std::set<std::string> out;
  const std::size_t n = positions.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Occurrence> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) chosen.push_back(positions[i]);
    }
    bool antichain = true;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        if (i != j && is_prefix(chosen[i], chosen[j])) antichain = false;
      }
    }
    if (!antichain) continue;
    const std::size_t k = chosen.size();
    std::vector<std::size_t> block(k, 0);
    while (true) {
      bool consistent = true;
      for (std::size_t i = 0; i < k && consistent; ++i) {
        for (std::size_t j = 0; j < i && consistent; ++j) {
          if (block[i] == block[j] && !(subterm_at(eq, chosen[i]) == subterm_at(eq, chosen[j]))) consistent = false;
        }
      }
      if (consistent) {
        Term g = eq;
        for (std::size_t i = 0; i < k; ++i) g = replace_at(g, chosen[i], Term::var("V" + std::to_string(block[i])));
        out.insert(print_equation(canonical_rename(Equation::from_term(g))));
      }
      // Next restricted growth string: block[i] <= 1 + max(block[0..i-1]).
      bool advanced = false;
      for (std::size_t i = k; i-- > 1;) {
        std::size_t limit = 0;
        for (std::size_t j = 0; j < i; ++j) limit = std::max(limit, block[j] + 1);
        if (block[i] < limit) {
          ++block[i];
          std::fill(block.begin() + static_cast<std::ptrdiff_t>(i) + 1, block.end(), 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

inline Term random_constructor_term(Rng& rng, std::size_t budget) {
  if (budget <= 1 || rng.coin(0.35)) return rng.coin(0.8) ? T("0") : T("[]");
  if (budget >= 3 && rng.coin(0.3)) {
    const std::size_t left = 1 + rng.index(budget - 2);
    return Term::app(Symbol{kConsName, 2},
                     {random_constructor_term(rng, left), random_constructor_term(rng, budget - 1 - left)});
  }
  return Term::app(Symbol{"s", 1}, {random_constructor_term(rng, budget - 1)});
}

// Ground example with node_count(lhs) + node_count(rhs) <= 7.
inline Equation random_example(Rng& rng) {
  const std::size_t arity = 1 + rng.index(2);
  std::vector<Term> args;
  std::size_t used = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    args.push_back(random_constructor_term(rng, 1 + rng.index(2)));
    used += args.back().node_count();
  }
  Term rhs = random_constructor_term(rng, 7 - used);
  return Equation{Term::app(Symbol{"f", arity}, std::move(args)), std::move(rhs)};
}

}  // namespace rsynth::testing
