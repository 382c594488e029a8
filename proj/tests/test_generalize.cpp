#include <doctest.h>

#include <set>

#include "rsynth/benchmarks.hpp"
#include "rsynth/generalize.hpp"
#include "test_support.hpp"

using namespace rsynth;
using rsynth::testing::E;
using rsynth::testing::brute_force_generalizations;
using rsynth::testing::random_example;
using rsynth::testing::T;

namespace {

std::set<std::string> canonical_set(const std::vector<Equation>& eqs) {
  std::set<std::string> out;
  for (const Equation& e : eqs) out.insert(print_equation(canonical_rename(e)));
  return out;
}

std::set<std::string> canonical_set(std::initializer_list<const char*> eqs) {
  std::vector<Equation> parsed;
  for (const char* e : eqs) parsed.push_back(E(e));
  return canonical_set(parsed);
}

}  // namespace

TEST_CASE("generalizations of square_bino(0,0) = 0") {
  const std::vector<Equation> all = generalizations(E("square_bino(0,0) = 0"));
  CHECK(all.size() == 17);
  CHECK(canonical_set(all) == canonical_set({"A = B", "A = 0", "square_bino(A,B) = C", "square_bino(A,B) = B",
                                             "square_bino(A,B) = A", "square_bino(A,B) = 0", "square_bino(A,A) = B",
                                             "square_bino(A,A) = A", "square_bino(A,A) = 0", "square_bino(A,0) = B",
                                             "square_bino(A,0) = A", "square_bino(A,0) = 0", "square_bino(0,A) = B",
                                             "square_bino(0,A) = A", "square_bino(0,A) = 0", "square_bino(0,0) = A",
                                             "square_bino(0,0) = 0"}));
  const std::vector<Equation> restricted = restricted_generalizations(E("square_bino(0,0) = 0"));
  CHECK(restricted.size() == 10);
  CHECK(canonical_set(restricted) ==
        canonical_set({"square_bino(A,B) = B", "square_bino(A,B) = A", "square_bino(A,B) = 0", "square_bino(A,A) = A",
                       "square_bino(A,A) = 0", "square_bino(A,0) = A", "square_bino(A,0) = 0", "square_bino(0,A) = A",
                       "square_bino(0,A) = 0", "square_bino(0,0) = 0"}));
}

TEST_CASE("generalizations of a unary example") {
  CHECK(canonical_set(generalizations(E("f(0) = 0"))) ==
        canonical_set({"A = B", "A = 0", "f(A) = B", "f(A) = A", "f(A) = 0", "f(0) = A", "f(0) = 0"}));
  CHECK(canonical_set(restricted_generalizations(E("f(0) = 0"))) == canonical_set({"f(A) = A", "f(A) = 0", "f(0) = 0"}));
}

TEST_CASE("generalizations are canonical and distinct") {
  for (const char* ex : {"square(2) = 4", "sum_n(1) = 1", "f([0,0]) = 0"}) {
    const std::vector<Equation> gs = generalizations(E(ex));
    CHECK(canonical_set(gs).size() == gs.size());
    for (const Equation& g : gs) CHECK(canonical_rename(g) == g);
  }
  CHECK_THROWS_AS(generalizations(E("f(A) = 0")), std::invalid_argument);
}

TEST_CASE("property: generalizations match a brute-force oracle") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const Equation e = random_example(rng);
    REQUIRE(e.node_count() <= 7);
    INFO(print_equation(e));
    const std::vector<Equation> gs = generalizations(e);
    CHECK(canonical_set(gs) == brute_force_generalizations(e));
    std::set<std::string> legal;
    for (const Equation& g : gs) {
      if (is_program_legal(g)) legal.insert(print_equation(g));
    }
    CHECK(canonical_set(restricted_generalizations(e)) == legal);
  }
}

TEST_CASE("the pool covers the basic examples only") {
  const Dataset d = builtin_problem("sum-n").dataset;
  std::set<std::string> expected;
  for (const Example& e : d.positive_basic) {
    for (const std::string& s : canonical_set(restricted_generalizations(e))) expected.insert(s);
  }
  const std::vector<Equation> pool = generalization_pool(d);
  CHECK(canonical_set(pool) == expected);
  CHECK(pool.size() == expected.size());
}

TEST_CASE("initial population") {
  const Dataset d = builtin_problem("square-bino").dataset;
  const std::vector<Equation> pool = generalization_pool(d);
  Rng rng(5);
  const std::vector<Program> pop = initial_population(d, 500, rng);
  REQUIRE(pop.size() == 500);
  for (std::size_t i = 0; i < pool.size(); ++i) CHECK(pop[i] == Program{{pool[i]}});
  const std::set<std::string> pool_set = canonical_set(pool);
  for (const Program& p : pop) {
    REQUIRE(p.size() == 1);
    CHECK(pool_set.count(print_equation(p.equations[0])) == 1);
    CHECK_FALSE(is_recursive(p.equations[0]));
  }

  Rng a(9);
  Rng b(9);
  CHECK(initial_population(d, 100, a) == initial_population(d, 100, b));

  Rng c(1);
  CHECK(initial_population(d, 3, c).size() == pool.size());
  CHECK_THROWS_AS(initial_population(d, 0, c), std::invalid_argument);

  Dataset bad;
  bad.positive_basic = {E("c = 0")};
  CHECK_THROWS_AS(initial_population(bad, 10, c), EmptyPool);
}
