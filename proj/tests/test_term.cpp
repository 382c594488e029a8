#include <doctest.h>

#include "rsynth/syntax.hpp"
#include "rsynth/term.hpp"
#include "test_support.hpp"

using namespace rsynth;
using rsynth::testing::E;
using rsynth::testing::P;
using rsynth::testing::random_term;
using rsynth::testing::T;

namespace {

std::vector<std::string> paths(const std::vector<Occurrence>& os) {
  std::vector<std::string> out;
  for (const Occurrence& o : os) out.push_back(o.to_string());
  return out;
}

Substitution subst(std::initializer_list<std::pair<const char*, const char*>> items) {
  Substitution s;
  for (const auto& [v, t] : items) s.bind(v, T(t));
  return s;
}

}  // namespace

TEST_CASE("occurrences are listed in pre-order") {
  CHECK(paths(occurrences(T("sum(s(0),X)"))) == std::vector<std::string>{"Λ", "1", "1.1", "2"});
  CHECK(paths(occurrences(T("X"))) == std::vector<std::string>{"Λ"});
  CHECK(paths(occurrences(T("square_bino(0,0)"))) == std::vector<std::string>{"Λ", "1", "2"});
  CHECK(paths(non_var_occurrences(T("sum(s(0),X)"))) == std::vector<std::string>{"Λ", "1", "1.1"});
}

TEST_CASE("subterm_at and replace_at") {
  const Term t = T("sum(s(0),X)");
  CHECK(subterm_at(t, Occurrence{{1, 1}}) == T("0"));
  CHECK(subterm_at(T("cube(s(A))"), Occurrence{}) == T("cube(s(A))"));
  CHECK_THROWS_AS(subterm_at(t, Occurrence{{3}}), InvalidOccurrence);
  CHECK_THROWS_AS(replace_at(t, Occurrence{{2, 1}}, T("0")), InvalidOccurrence);
  CHECK(replace_at(t, Occurrence{{1}}, T("N")) == T("sum(N,X)"));
  CHECK(replace_at(T("prod(N,0)"), Occurrence{{2}}, T("s(M)")) == T("prod(N,s(M))"));
  CHECK(replace_at(t, Occurrence{}, T("0")) == T("0"));
}

TEST_CASE("substitution application") {
  CHECK(apply(subst({{"X", "s(0)"}}), T("sum(X,X)")) == T("sum(s(0),s(0))"));
  CHECK(apply(Substitution{}, T("f(X,Y)")) == T("f(X,Y)"));
  CHECK(apply(subst({{"A", "0"}, {"B", "s(0)"}}), T("square_bino(A,B)")) == T("square_bino(0,s(0))"));
  Substitution s;
  s.bind("X", T("X"));
  CHECK(s.empty());
}

TEST_CASE("composition examples") {
  CHECK(compose(subst({{"Y", "0"}}), subst({{"X", "s(Y)"}})) == subst({{"X", "s(0)"}, {"Y", "0"}}));
  const Substitution sigma = subst({{"X", "f(Y)"}});
  CHECK(compose(Substitution{}, sigma) == sigma);
  CHECK(compose(subst({{"X", "0"}}), subst({{"X", "s(0)"}})) == subst({{"X", "s(0)"}}));
}

TEST_CASE("matching examples") {
  CHECK(match(T("sum(N,0)"), T("sum(s(0),0)")) == subst({{"N", "s(0)"}}));
  CHECK_FALSE(match(T("square_bino(A,A)"), T("square_bino(0,s(0))")));
  CHECK(match(T("sum(N,s(M))"), T("sum(0,s(s(0)))")) == subst({{"N", "0"}, {"M", "s(0)"}}));
  CHECK(match(T("f(X)"), T("f(X)")) == Substitution{});
  CHECK_FALSE(match(T("f(X,X)"), T("f(X,Y)")));
}

TEST_CASE("unification examples") {
  auto mgu = unify(T("f(X,s(Y))"), T("f(s(Z),X)"));
  REQUIRE(mgu);
  CHECK(apply(*mgu, T("f(X,s(Y))")) == apply(*mgu, T("f(s(Z),X)")));
  CHECK_FALSE(unify(T("X"), T("s(X)")));
  CHECK_FALSE(unify(T("f(X,X)"), T("f(0,s(0))")));
  CHECK(unify(T("X"), T("X")) == Substitution{});
}

TEST_CASE("property: composition law over random substitutions") {
  Rng rng(11);
  const std::vector<std::string> vars = {"X", "Y", "Z"};
  for (int i = 0; i < 1000; ++i) {
    Substitution delta;
    Substitution sigma;
    for (const std::string& v : vars) {
      if (rng.coin(0.6)) delta.bind(v, random_term(rng, 3, vars));
      if (rng.coin(0.6)) sigma.bind(v, random_term(rng, 3, vars));
    }
    const Term t = random_term(rng, 4, vars);
    REQUIRE(apply(compose(delta, sigma), t) == apply(delta, apply(sigma, t)));
  }
}

TEST_CASE("property: matching recovers the instantiating substitution") {
  Rng rng(12);
  const std::vector<std::string> vars = {"X", "Y", "Z"};
  for (int i = 0; i < 1000; ++i) {
    const Term pattern = random_term(rng, 4, vars);
    Substitution theta;
    for (const std::string& v : vars) theta.bind(v, random_term(rng, 3, {}));
    const Term subject = apply(theta, pattern);
    auto m = match(pattern, subject);
    REQUIRE(m);
    CHECK(apply(*m, pattern) == subject);
    std::set<std::string> pv;
    collect_variables(pattern, pv);
    CHECK(*m == theta.restricted_to(pv));
  }
}

TEST_CASE("property: unifiers equate both sides and are idempotent") {
  Rng rng(13);
  const std::vector<std::string> vars = {"X", "Y", "Z", "W"};
  int unified = 0;
  for (int i = 0; i < 1000; ++i) {
    const Term a = random_term(rng, 4, vars);
    const Term b = rng.coin(0.5) ? random_term(rng, 4, vars) : apply(subst({{"X", "s(Y)"}}), a);
    auto mgu = unify(a, b);
    if (!mgu) continue;
    ++unified;
    const Term ua = apply(*mgu, a);
    REQUIRE(ua == apply(*mgu, b));
    CHECK(apply(*mgu, ua) == ua);
  }
  CHECK(unified > 100);
}

TEST_CASE("property: a term unifies with any of its instances") {
  Rng rng(14);
  const std::vector<std::string> vars = {"X", "Y"};
  for (int i = 0; i < 1000; ++i) {
    const Term t = random_term(rng, 4, vars);
    Substitution theta;
    for (const std::string& v : vars) theta.bind(v, random_term(rng, 2, {}));
    auto mgu = unify(t, apply(theta, t));
    REQUIRE(mgu);
    CHECK(apply(*mgu, t) == apply(theta, t));
  }
}

TEST_CASE("property: printing and parsing round-trip") {
  Rng rng(15);
  const std::vector<std::string> vars = {"X", "Y", "AB", "N1"};
  for (int i = 0; i < 1000; ++i) {
    const Term t = random_term(rng, 5, vars);
    REQUIRE(parse_term(print_term(t, false)) == t);
    REQUIRE(parse_term(print_term(t, true)) == t);
  }
}

TEST_CASE("node count and depth") {
  CHECK(T("X").node_count() == 1);
  CHECK(T("0").node_count() == 1);
  CHECK(T("sum(s(0),X)").node_count() == 4);
  CHECK(T("sum(s(0),X)").depth() == 3);
  CHECK(E("sum_n(s(A)) = sum(s(A),A)").node_count() == 7);
}

TEST_CASE("equation classification") {
  CHECK(is_program_legal(E("sum(N,0) = N")));
  CHECK_FALSE(is_program_legal(E("A = 0")));
  CHECK_FALSE(is_program_legal(E("f = 0")));
  CHECK_FALSE(is_program_legal(E("s(A) = A")));
  CHECK_FALSE(is_program_legal(E("f(A) = B")));
  CHECK(orphan_variables(E("f(A) = g(B,C,B)")) == std::vector<std::string>{"B", "C"});
  CHECK(has_pattern_lhs(E("f(s(A),0) = A")));
  CHECK_FALSE(has_pattern_lhs(E("f(g(A)) = A")));
  CHECK(is_recursive(E("sum_n(s(A)) = sum(A,sum_n(A))")));
  CHECK_FALSE(is_recursive(E("sum_n(s(A)) = sum(A,A)")));
}

TEST_CASE("canonical renaming") {
  CHECK(canonical_rename(E("f(X,Y) = g(Y,Z1)")) == E("f(A,B) = g(B,C)"));
  CHECK(equal_up_to_renaming(E("f(X,Y) = X"), E("f(B,A) = B")));
  CHECK_FALSE(equal_up_to_renaming(E("f(X,Y) = X"), E("f(X,X) = X")));
  CHECK(canonical_var_name(0) == "A");
  CHECK(canonical_var_name(25) == "Z");
  CHECK(canonical_var_name(26) == "AA");
}

TEST_CASE("fresh variables avoid given names") {
  VariableGenerator fresh("N", {"N1", "N2"});
  CHECK(fresh.next() == T("N3"));
  const Equation e = rename_fresh(E("f(A,B) = A"), fresh);
  CHECK(e == E("f(N4,N5) = N4"));
}

TEST_CASE("admissibility limits") {
  const ProgramLimits limits;
  CHECK(is_admissible(P("sum_n(0) = 0; sum_n(s(A)) = s(sum(sum_n(A),A))"), limits));
  CHECK_FALSE(is_admissible(P("f(0) = 0; f(s(0)) = 0; f(A) = A; f(s(A)) = A"), limits));
  CHECK(is_admissible(P("f(0) = 0; f(s(0)) = 0; f(A) = A; f(s(A)) = f(A)"), limits));
  CHECK_FALSE(is_admissible(P("f(A) = g(A)"), ProgramLimits{3, 3, 3}));
  CHECK_FALSE(is_admissible(P("f(g(A)) = A"), limits));
  const Program p = P("f(A) = s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(s(A)))))))))))))))))))))))))))");
  CHECK(p.equations[0].node_count() == 30);
  CHECK(is_admissible(p, limits));
  CHECK_FALSE(is_admissible(Program{{Equation{p.equations[0].lhs, T("s(" + print_term(p.equations[0].rhs) + ")")}}},
                            limits));
}
