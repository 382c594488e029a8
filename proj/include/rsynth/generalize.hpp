#pragma once

#include <stdexcept>
#include <vector>

#include "rsynth/dataset.hpp"
#include "rsynth/rng.hpp"
#include "rsynth/term.hpp"

namespace rsynth {

/// No example produced a restricted generalization.
class EmptyPool : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every anti-instance of the ground equation e, viewed as the term
/// =(lhs, rhs): some non-root occurrences are replaced by variables, where
/// occurrences sharing a variable hold identical subterms. Canonically
/// renamed, without duplicates, in enumeration order.
std::vector<Equation> generalizations(const Example& e);

/// The generalizations that are program-legal equations.
std::vector<Equation> restricted_generalizations(const Example& e);

/// Restricted generalizations of every E+ example, duplicates (up to
/// renaming) removed.
std::vector<Equation> generalization_pool(const Dataset& d);

/// One single-equation program per pool item, then uniform draws from the pool
/// until min_size is reached. Throws EmptyPool if the pool is empty.
std::vector<Program> initial_population(const Dataset& d, std::size_t min_size, Rng& rng);

}  // namespace rsynth
