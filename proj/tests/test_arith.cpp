#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdwb/arith.hpp"
#include "cdwb/error.hpp"
#include "support.hpp"

using namespace cdwb;

TEST_CASE("value_closed") {
  CHECK(value_closed(parse_term("(S(S(0))+S(0))")) == 3);
  CHECK(value_closed(parse_term("(S(S(0))*S(S(0)))")) == 4);
  CHECK(value_closed(parse_term("#7")) == 7);
  CHECK_THROWS_AS(value_closed(parse_term("(x+0)")), OpenTermError);
}

TEST_CASE("value_assign") {
  CHECK(value_assign(parse_term("(v+S(0))"), {{"v", 2}}) == 3);
  CHECK(value_assign(parse_term("(#4*S(0))"), {{"q", 9}}) == 4);
  CHECK(value_assign(parse_term("(v*w)"), {{"v", 3}, {"w", 4}}) == 12);
  CHECK_THROWS_AS(value_assign(parse_term("(v*w)"), {{"v", 3}}), OpenTermError);
}

TEST_CASE("overflow cap") {
  ArithLimits small{100};
  CHECK(value_closed(parse_term("(#10*#10)"), small) == 100);
  CHECK_THROWS_AS(value_closed(parse_term("(#10*#11)"), small), OverflowError);
  CHECK_THROWS_AS(value_closed(parse_term("S(#100)"), small), OverflowError);
  CHECK_THROWS_AS(value_closed(parse_term("(#1000000000*#1000000000)")), OverflowError);
  CHECK_THROWS_AS(value_closed(parse_term("#1000000001")), OverflowError);
}

TEST_CASE("term_variants") {
  auto two = term_variants(2, 7);
  REQUIRE(two.size() >= 3);
  CHECK(to_string(two[0]) == "#2");
  CHECK(to_string(two[1]) == "(S(0)+S(0))");
  CHECK(to_string(two[2]) == "S(S(0))");

  auto zero_v = term_variants(0, 7);
  REQUIRE(zero_v.size() >= 3);
  CHECK(to_string(zero_v[0]) == "0");
  CHECK(to_string(zero_v[1]) == "(0+0)");
  CHECK(to_string(zero_v[2]) == "(0*S(0))");

  auto one = term_variants(1, 1);
  REQUIRE(one.size() == 1);
  CHECK(to_string(one[0]) == "#1");
}

TEST_CASE("property: variants are distinct and evaluate to their value") {
  for (Value n = 0; n < 200; ++n) {
    auto vs = term_variants(n, 7);
    CHECK(vs.size() >= 3);
    std::set<std::string> seen;
    for (const auto& t : vs) {
      CHECK(value_closed(t) == n);
      CHECK(size(t) <= 7);
      seen.insert(to_string(t));
    }
    CHECK(seen.size() == vs.size());
  }
}

TEST_CASE("property: value_assign agrees with numeral substitution") {
  testing::Generator g(testing::test_seed());
  for (int i = 0; i < 500; ++i) {
    std::mt19937_64 terms(g.rng()());
    auto phi = parse_formula(g.formula(g.rng()(), terms, {}));
    std::vector<TermPtr> found;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& x) {
      if (x->lhs) found.push_back(x->lhs);
      if (x->rhs) found.push_back(x->rhs);
      for (const auto& s : direct_subformulas(x)) walk(s);
    };
    walk(phi);
    for (const auto& t : found) {
      Assignment alpha{{"x", g.below(6)}, {"y", g.below(6)}};
      TermPtr closed = t;
      for (const auto& [v, n] : alpha) closed = substitute_numeral(closed, v, n);
      CHECK(value_assign(t, alpha) == value_closed(closed));
    }
  }
}

TEST_CASE("collapse_closed_terms") {
  CHECK(to_string(collapse_closed_terms(parse_formula("(S(0)+S(0))=S(S(0))"))) == "#2=#2");
  CHECK(to_string(collapse_closed_terms(parse_formula("exists v.v=(S(0)+S(0))"))) == "exists v.v=#2");
  CHECK(to_string(collapse_closed_terms(parse_formula("T((v+(0*#5)))"))) == "T((v+#0))");
}
