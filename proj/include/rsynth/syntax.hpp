#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rsynth/dataset.hpp"
#include "rsynth/term.hpp"

namespace rsynth {

/// Malformed source text. Line and column are 1-based.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Largest decimal numeral accepted as sugar for s^k(0).
inline constexpr std::uint64_t kMaxNumeral = 100000;

Term parse_term(std::string_view src);
/// One equation `lhs = rhs`. Program legality is not checked.
Equation parse_equation(std::string_view src);
/// Equations separated by `;` or newlines; `%` starts a comment.
Program parse_program(std::string_view src);

std::string print_term(const Term& t, bool numeral_sugar = false);
std::string print_equation(const Equation& e, bool numeral_sugar = false);
std::string print_program(const Program& p, bool numeral_sugar = false, std::string_view separator = "; ");
std::string print_substitution(const Substitution& sigma);

Term peano(std::uint64_t k);
/// k when t is the ground numeral s^k(0), nothing otherwise.
std::optional<std::uint64_t> peano_inverse(const Term& t);

/// Dataset file: `#basic`, `#extra` and `#background` sections of equations.
Dataset parse_dataset(std::string_view src);
std::string print_dataset(const Dataset& d, bool numeral_sugar = true);

}  // namespace rsynth
