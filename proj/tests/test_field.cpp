#include <doctest.h>

#include "g2cb/field.hpp"
#include "g2cb/rng.hpp"

using namespace g2cb;

TEST_SUITE_BEGIN("field");

TEST_CASE("prime context validation") {
  CHECK_NOTHROW(FieldContext::prime(3));
  CHECK_NOTHROW(FieldContext::prime(10007));
  CHECK_NOTHROW(FieldContext::prime(10009));
  CHECK_NOTHROW(FieldContext::prime(20011));
  CHECK_THROWS_AS(FieldContext::prime(2), Error);
  CHECK_THROWS_AS(FieldContext::prime(10008), Error);
  CHECK_THROWS_AS(FieldContext::prime(1), Error);
}

TEST_CASE("canonical forms") {
  auto q = FieldContext::rationals();
  CHECK(Scalar::parse("2/4", q) == Scalar::parse("1/2", q));
  CHECK(Scalar::parse("-2/4", q).str() == "-1/2");
  CHECK(Scalar::parse("4/2", q).str() == "2");
  auto p = FieldContext::prime(7);
  CHECK(Scalar::parse("-1", p).str() == "6");
  CHECK(Scalar::parse("15", p) == Scalar::make(p, 1));
  // a/b literals mean a * b^-1 in any field
  CHECK(Scalar::parse("1/2", p) == Scalar::make(p, 4));
}

TEST_CASE("cross-context arithmetic is rejected") {
  Scalar a = Scalar::make(FieldContext::prime(7), 3);
  Scalar b = Scalar::make(FieldContext::prime(11), 3);
  Scalar c = Scalar::make(FieldContext::rationals(), 3);
  CHECK_THROWS_AS(a + b, Error);
  CHECK_THROWS_AS(a * c, Error);
  // context-free integer literals promote
  CHECK(a + Scalar(4) == Scalar::make(FieldContext::prime(7), 0));
  CHECK(c * Scalar(2) == Scalar::make(FieldContext::rationals(), 6));
}

TEST_CASE("field axioms, randomized") {
  for (std::uint64_t modulus : {101ull, 10009ull}) {
    auto ctx = FieldContext::prime(modulus);
    SeededRng rng = SeededRng::derive(7, "axioms");
    for (int i = 0; i < 200; ++i) {
      Scalar a = rng.field_element(ctx), b = rng.field_element(ctx), c = rng.field_element(ctx);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(ctx));
    }
  }
}

TEST_CASE("legendre and square roots") {
  auto p7 = FieldContext::prime(7);
  // -1 is a non-residue mod 7 (7 = 3 mod 4)
  CHECK(legendre(6, 7) == -1);
  CHECK(!Scalar::make(p7, -1).is_square());
  CHECK_THROWS_AS(Scalar::make(p7, -1).sqrt(), Error);

  for (std::uint64_t modulus : {10009ull, 20011ull, 1000003ull}) {
    SeededRng rng = SeededRng::derive(11, "sqrt");
    auto ctx = FieldContext::prime(modulus);
    for (int i = 0; i < 50; ++i) {
      Scalar a = rng.field_element(ctx);
      Scalar sq = a * a;
      CHECK(sq.is_square());
      Scalar r = sq.sqrt();
      CHECK(r * r == sq);
    }
  }
}

TEST_CASE("rational square roots") {
  auto q = FieldContext::rationals();
  CHECK(Scalar::parse("9/4", q).sqrt() == Scalar::parse("3/2", q));
  CHECK(!Scalar::parse("2", q).is_square());
  CHECK_THROWS_AS(Scalar::parse("-4", q).sqrt(), Error);
}

TEST_CASE("pow and division") {
  auto ctx = FieldContext::prime(10009);
  Scalar a = Scalar::make(ctx, 1234);
  CHECK(a.pow(0) == Scalar::one(ctx));
  CHECK(a.pow(3) == a * a * a);
  CHECK(a.pow(-1) == a.inverse());
  CHECK_THROWS_AS(a / Scalar::zero(ctx), Error);
}

TEST_SUITE_END();
