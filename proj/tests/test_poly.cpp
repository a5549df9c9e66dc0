#include <doctest.h>

#include "g2cb/poly.hpp"
#include "g2cb/rng.hpp"

using namespace g2cb;

TEST_SUITE_BEGIN("poly");

TEST_CASE("parse and evaluate") {
  auto q = FieldContext::rationals();
  MultiPoly p = MultiPoly::parse("x^2 - 1", q);
  CHECK(p.eval_univariate(Scalar(3)) == Scalar::make(q, 8));
  CHECK(MultiPoly::parse("(x + 1)*(x - 1)", q) == p);
  CHECK(MultiPoly::parse("3/2*x", q).eval_univariate(Scalar(2)) == Scalar::make(q, 3));
}

TEST_CASE("substitution is a ring homomorphism") {
  auto q = FieldContext::rationals();
  MultiPoly x2 = MultiPoly::parse("x^2", q);
  MultiPoly shifted = x2.substitute(0, MultiPoly::parse("x + 1", q));
  CHECK(shifted == MultiPoly::parse("x^2 + 2*x + 1", q));

  SeededRng rng = SeededRng::derive(5, "subst");
  auto ctx = FieldContext::prime(10009);
  MultiPoly a = MultiPoly::parse("x^2*y - 3*y + 1", ctx);
  MultiPoly b = MultiPoly::parse("y^2 + x", ctx);
  MultiPoly r = MultiPoly::parse("x + y - 2", ctx);
  // subst(a*b) = subst(a)*subst(b), subst(a+b) = subst(a)+subst(b)
  CHECK((a * b).substitute(0, r) == a.substitute(0, r) * b.substitute(0, r));
  CHECK((a + b).substitute(1, r) == a.substitute(1, r) + b.substitute(1, r));
}

TEST_CASE("print-parse round trip on stored polynomials") {
  auto ctx = FieldContext::prime(10009);
  SeededRng rng = SeededRng::derive(9, "roundtrip");
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p(ctx);
    for (int t = 0; t < 5; ++t) {
      Expo e{};
      e[rng.below(3)] = static_cast<std::uint16_t>(rng.below(4));
      e[2 + rng.below(5)] = static_cast<std::uint16_t>(rng.below(3));
      p.add_term(e, rng.field_element(ctx));
    }
    if (p.is_zero()) continue;
    CHECK(MultiPoly::parse(p.str(), ctx) == p);
  }
  auto q = FieldContext::rationals();
  MultiPoly r = MultiPoly::parse("3*x^2*y - 1/2*x + 5", q);
  CHECK(MultiPoly::parse(r.str(), q) == r);
}

TEST_CASE("evaluation commutes with ring operations") {
  auto ctx = FieldContext::prime(10007);
  SeededRng rng = SeededRng::derive(13, "evalhom");
  MultiPoly p = MultiPoly::parse("x^3 - 2*x*y + y^2", ctx);
  MultiPoly q = MultiPoly::parse("y*x + 7", ctx);
  for (int i = 0; i < 20; ++i) {
    std::map<int, Scalar> pt = {{0, rng.field_element(ctx)}, {1, rng.field_element(ctx)}};
    CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
    CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
  }
}

TEST_CASE("syntax errors carry positions") {
  auto q = FieldContext::rationals();
  CHECK_THROWS_WITH_AS(MultiPoly::parse("x +", q), doctest::Contains("position"), Error);
  CHECK_THROWS_AS(MultiPoly::parse("x + (y", q), Error);
  CHECK_THROWS_AS(MultiPoly::parse("2 ** x", q), Error);
  try {
    MultiPoly::parse("x + w", q);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownVariable);
  }
}

TEST_CASE("derivative and degree bookkeeping") {
  auto q = FieldContext::rationals();
  MultiPoly f = MultiPoly::parse("x^6 - 1", q);
  CHECK(f.derivative(0) == MultiPoly::parse("6*x^5", q));
  CHECK(f.total_degree() == 6);
  CHECK(f.degree_in(0) == 6);
  CHECK(MultiPoly(q).total_degree() == -1);
  // derivative in characteristic p kills p-th powers
  auto p3 = FieldContext::prime(3);
  CHECK(MultiPoly::parse("x^6 - 1", p3).derivative(0).is_zero());
}

TEST_CASE("term order is graded-lex on the declared variable order") {
  auto q = FieldContext::rationals();
  MultiPoly p = MultiPoly::parse("1 + x + y^3 + x*y", q);
  CHECK(p.str() == "y^3 + x*y + x + 1");
}

TEST_SUITE_END();
