#include "rsynth/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace rsynth {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Name, Var, Number, LParen, RParen, LBracket, RBracket, Bar, Comma, Equals, Dot, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Name: return "function name";
    case Tok::Var: return "variable";
    case Tok::Number: return "numeral";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Bar: return "'|'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Dot: return "'•'";
    case Tok::Sep: return "end of equation";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Newlines separate equations only outside brackets and not right after '='.
std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t depth = 0;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, std::size_t c) { out.push_back(Token{k, std::move(text), line, c}); };
  while (i < src.size()) {
    const char c = src[i];
    const std::size_t start_col = col;
    if (c == '\n') {
      if (depth == 0 && !out.empty() && out.back().kind != Tok::Equals && out.back().kind != Tok::Sep) {
        push(Tok::Sep, "\n", start_col);
      }
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (is_lower(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (is_lower(src[j]) || src[j] == '_' || is_digit(src[j]))) ++j;
      push(Tok::Name, std::string(src.substr(i, j - i)), start_col);
      col += j - i;
      i = j;
      continue;
    }
    if (is_upper(c)) {
      std::size_t j = i;
      while (j < src.size() && is_upper(src[j])) ++j;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && (is_lower(src[j]) || is_upper(src[j]) || src[j] == '_')) {
        throw SyntaxError("malformed variable name", line, start_col);
      }
      push(Tok::Var, std::string(src.substr(i, j - i)), start_col);
      col += j - i;
      i = j;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && (is_lower(src[j]) || is_upper(src[j]) || src[j] == '_')) {
        throw SyntaxError("malformed numeral", line, start_col);
      }
      push(Tok::Number, std::string(src.substr(i, j - i)), start_col);
      col += j - i;
      i = j;
      continue;
    }
    if (src.substr(i, kConsName.size()) == kConsName) {
      push(Tok::Dot, kConsName, start_col);
      i += kConsName.size();
      ++col;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", start_col); ++depth; break;
      case ')': push(Tok::RParen, ")", start_col); if (depth) --depth; break;
      case '[': push(Tok::LBracket, "[", start_col); ++depth; break;
      case ']': push(Tok::RBracket, "]", start_col); if (depth) --depth; break;
      case '|': push(Tok::Bar, "|", start_col); break;
      case ',': push(Tok::Comma, ",", start_col); break;
      case '=': push(Tok::Equals, "=", start_col); break;
      case ';': push(Tok::Sep, ";", start_col); break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, start_col);
    }
    ++i;
    ++col;
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var: {
        advance();
        return Term::var(t.text);
      }
      case Tok::Number: {
        advance();
        if (t.text.size() > 6 || std::stoull(t.text) > kMaxNumeral) {
          throw SyntaxError("numeral " + t.text + " is too large", t.line, t.column);
        }
        return peano(std::stoull(t.text));
      }
      case Tok::Name: {
        advance();
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) {
          advance();
          args.push_back(term());
          while (peek().kind == Tok::Comma) {
            advance();
            args.push_back(term());
          }
          expect(Tok::RParen);
        }
        return Term::app(t.text, std::move(args));
      }
      case Tok::Dot: {
        advance();
        expect(Tok::LParen);
        Term head = term();
        expect(Tok::Comma);
        Term tail = term();
        expect(Tok::RParen);
        return Term::app(Symbol{kConsName, 2}, {std::move(head), std::move(tail)});
      }
      case Tok::LBracket: {
        advance();
        if (peek().kind == Tok::RBracket) {
          advance();
          return Term::constant(kNilName);
        }
        std::vector<Term> items{term()};
        while (peek().kind == Tok::Comma) {
          advance();
          items.push_back(term());
        }
        Term tail = Term::constant(kNilName);
        if (peek().kind == Tok::Bar) {
          advance();
          tail = term();
        }
        expect(Tok::RBracket);
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
          tail = Term::app(Symbol{kConsName, 2}, {*it, tail});
        }
        return tail;
      }
      default:
        throw error("expected a term but found " + std::string(describe(t.kind)));
    }
  }

  Equation equation() {
    Term lhs = term();
    expect(Tok::Equals);
    Term rhs = term();
    return Equation{std::move(lhs), std::move(rhs)};
  }

  Program program() {
    Program p;
    skip_separators();
    while (peek().kind != Tok::End) {
      p.equations.push_back(equation());
      if (peek().kind != Tok::End) expect(Tok::Sep);
      skip_separators();
    }
    return p;
  }

  void finish() {
    skip_separators();
    if (peek().kind != Tok::End) throw error("unexpected " + std::string(describe(peek().kind)));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  void expect(Tok k) {
    if (peek().kind != k) {
      throw error("expected " + std::string(describe(k)) + " but found " + describe(peek().kind));
    }
    advance();
  }
  void skip_separators() {
    while (peek().kind == Tok::Sep) advance();
  }
  SyntaxError error(const std::string& msg) const { return SyntaxError(msg, peek().line, peek().column); }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print_rec(const Term& t, bool sugar, std::string& out) {
  if (t.is_var()) {
    out += t.name();
    return;
  }
  if (sugar && t.name() == kSuccName && t.arity() == 1) {
    if (auto k = peano_inverse(t)) {
      out += std::to_string(*k);
      return;
    }
  }
  if (t.name() == kConsName && t.arity() == 2) {
    out += '[';
    print_rec(t.args()[0], sugar, out);
    out += '|';
    print_rec(t.args()[1], sugar, out);
    out += ']';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print_rec(t.args()[i], sugar, out);
  }
  out += ')';
}

}  // namespace

Term parse_term(std::string_view src) {
  Parser p(src);
  Term t = p.term();
  p.finish();
  return t;
}

Equation parse_equation(std::string_view src) {
  Parser p(src);
  Equation e = p.equation();
  p.finish();
  return e;
}

Program parse_program(std::string_view src) {
  Parser p(src);
  return p.program();
}

std::string print_term(const Term& t, bool numeral_sugar) {
  std::string out;
  print_rec(t, numeral_sugar, out);
  return out;
}

std::string print_equation(const Equation& e, bool numeral_sugar) {
  return print_term(e.lhs, numeral_sugar) + " = " + print_term(e.rhs, numeral_sugar);
}

std::string print_program(const Program& p, bool numeral_sugar, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    if (i) out += separator;
    out += print_equation(p.equations[i], numeral_sugar);
  }
  return out;
}

std::string print_substitution(const Substitution& sigma) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : sigma.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v + "/" + print_term(t);
  }
  return out + "}";
}

Term peano(std::uint64_t k) {
  Term t = Term::constant(kZeroName);
  for (std::uint64_t i = 0; i < k; ++i) t = Term::app(Symbol{kSuccName, 1}, {t});
  return t;
}

std::optional<std::uint64_t> peano_inverse(const Term& t) {
  std::uint64_t k = 0;
  const Term* cur = &t;
  while (cur->is_app() && cur->name() == kSuccName && cur->arity() == 1) {
    ++k;
    cur = &cur->args()[0];
  }
  if (cur->is_app() && cur->name() == kZeroName && cur->arity() == 0) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Datasets

std::vector<Example> Dataset::all_examples() const {
  std::vector<Example> out = positive_basic;
  for (const Example& e : positive_extra) {
    bool seen = false;
    for (const Example& f : out) seen = seen || f == e;
    if (!seen) out.push_back(e);
  }
  return out;
}

void validate_dataset(const Dataset& d) {
  auto check_example = [&](const Example& e) {
    const std::string text = print_equation(e, true);
    if (!e.lhs.is_ground() || !e.rhs.is_ground()) throw std::invalid_argument("example is not ground: " + text);
    if (!is_constructor_term(e.rhs)) throw std::invalid_argument("example rhs is not a constructor term: " + text);
    if (e.lhs.is_var() || e.lhs.symbol() != d.target) {
      throw std::invalid_argument("example lhs is not rooted at " + d.target.name + ": " + text);
    }
  };
  if (d.positive_basic.empty()) throw std::invalid_argument("dataset has no positive basic examples");
  for (const Example& e : d.positive_basic) check_example(e);
  for (const Example& e : d.positive_extra) check_example(e);
  for (const Equation& e : d.background.equations) {
    if (!is_program_legal(e)) {
      throw std::invalid_argument("background equation is not program-legal: " + print_equation(e));
    }
  }
}

Dataset parse_dataset(std::string_view src) {
  enum class Section { None, Basic, Extra, Background };
  Dataset d;
  Section section = Section::None;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    std::size_t end = src.find('\n', pos);
    if (end == std::string_view::npos) end = src.size();
    std::string_view line = src.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '%') continue;
    std::string_view body = line.substr(first);
    if (body[0] == '#') {
      std::string_view name = body.substr(1);
      name = name.substr(0, name.find_first_of(" \t\r%"));
      if (name == "basic") section = Section::Basic;
      else if (name == "extra") section = Section::Extra;
      else if (name == "background") section = Section::Background;
      else throw SyntaxError("unknown section '#" + std::string(name) + "'", line_no, first + 1);
      continue;
    }
    if (section == Section::None) throw SyntaxError("equation outside of a section", line_no, first + 1);
    Program eqs;
    try {
      eqs = parse_program(line);
    } catch (const SyntaxError& err) {
      throw SyntaxError(err.message(), line_no, err.column());
    }
    auto& dest = section == Section::Basic ? d.positive_basic
                 : section == Section::Extra ? d.positive_extra
                                             : d.background.equations;
    dest.insert(dest.end(), eqs.equations.begin(), eqs.equations.end());
  }
  if (d.positive_basic.empty()) throw SyntaxError("dataset has no #basic examples", line_no, 1);
  const Term& lhs = d.positive_basic.front().lhs;
  if (lhs.is_var()) throw SyntaxError("example lhs must be a function call", 1, 1);
  d.target = lhs.symbol();
  validate_dataset(d);
  return d;
}

std::string print_dataset(const Dataset& d, bool numeral_sugar) {
  std::ostringstream os;
  os << "% target " << d.target.name << "/" << d.target.arity << "\n#basic\n";
  for (const Example& e : d.positive_basic) os << print_equation(e, numeral_sugar) << "\n";
  os << "#extra\n";
  for (const Example& e : d.positive_extra) os << print_equation(e, numeral_sugar) << "\n";
  os << "#background\n";
  for (const Equation& e : d.background.equations) os << print_equation(e, false) << "\n";
  return os.str();
}

}  // namespace rsynth
