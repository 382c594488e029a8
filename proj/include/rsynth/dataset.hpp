#pragma once

#include <string>
#include <vector>

#include "rsynth/term.hpp"

namespace rsynth {

/// A ground input/output pair written as an equation f(inputs) = output.
using Example = Equation;

/// Positive basic examples (training), positive extra examples (validation),
/// and the background-knowledge program available to every individual.
struct Dataset {
  std::vector<Example> positive_basic;
  std::vector<Example> positive_extra;
  Program background;
  Symbol target;

  /// E+ followed by the E++ examples not already in E+.
  std::vector<Example> all_examples() const;
};

/// Checks the dataset invariants: examples ground with constructor rhs and lhs
/// rooted at the target; background equations program-legal. Throws
/// std::invalid_argument describing the first violation.
void validate_dataset(const Dataset& d);

}  // namespace rsynth
