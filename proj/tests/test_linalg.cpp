#include <doctest.h>

#include "g2cb/linalg.hpp"
#include "g2cb/rng.hpp"

using namespace g2cb;

namespace {

ExactMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, const FieldContext& ctx, SeededRng& rng) {
  ExactMatrix m = zeros(rows, cols, ctx);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.field_element(ctx);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("rref on the stock examples") {
  auto ctx = FieldContext::prime(10007);
  SUBCASE("identity") {
    ExactMatrix id = identity(3, ctx);
    RrefResult r = rref(id);
    CHECK(r.rank == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(r.rref(i, j) == id(i, j));
  }
  SUBCASE("zero matrix") {
    CHECK(rref(zeros(2, 2, ctx)).rank == 0);
  }
  SUBCASE("proportional rows over F_10007") {
    ExactMatrix m = zeros(2, 3, ctx);
    m(0, 0) = Scalar::make(ctx, 1);
    m(0, 1) = Scalar::make(ctx, 2);
    m(0, 2) = Scalar::make(ctx, 3);
    m(1, 0) = Scalar::make(ctx, 2);
    m(1, 1) = Scalar::make(ctx, 4);
    m(1, 2) = Scalar::make(ctx, 6);
    RrefResult r = rref(m);
    CHECK(r.rank == 1);
    REQUIRE(r.pivot_cols.size() == 1);
    CHECK(r.pivot_cols[0] == 0);
  }
}

TEST_CASE("kernel basis conventions") {
  auto ctx = FieldContext::rationals();
  CHECK(kernel_basis(identity(4, ctx)).empty());

  ExactMatrix m = zeros(1, 2, ctx);
  m(0, 0) = Scalar::make(ctx, 1);
  m(0, 1) = Scalar::make(ctx, -1);
  auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0](0) == Scalar::make(ctx, 1));
  CHECK(basis[0](1) == Scalar::make(ctx, 1));
}

TEST_CASE("randomized rank and kernel properties") {
  auto ctx = FieldContext::prime(10009);
  SeededRng rng = SeededRng::derive(3, "linalg");
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index rows = 1 + static_cast<Eigen::Index>(rng.below(8));
    Eigen::Index cols = 1 + static_cast<Eigen::Index>(rng.below(8));
    ExactMatrix m = random_matrix(rows, cols, ctx, rng);

    CHECK(rank(m) == rank(ExactMatrix(m.transpose())));

    RrefResult r = rref(m);
    RrefResult rr = rref(r.rref);
    CHECK(rr.rank == r.rank);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) CHECK(rr.rref(i, j) == r.rref(i, j));

    auto basis = kernel_basis(m);
    CHECK(static_cast<Eigen::Index>(basis.size()) == cols - r.rank);
    for (const auto& v : basis) {
      ExactVector mv = m * v;
      CHECK(is_zero_vector(mv));
    }
  }
}

TEST_CASE("mixed contexts are rejected") {
  ExactMatrix m = zeros(1, 2, FieldContext::prime(7));
  m(0, 1) = Scalar::make(FieldContext::prime(11), 1);
  CHECK_THROWS_AS(rref(m), Error);
}

TEST_CASE("proportional predicate") {
  auto ctx = FieldContext::prime(10009);
  ExactVector a(3), b(3), c(3);
  a << Scalar::make(ctx, 1), Scalar::make(ctx, 3), Scalar::make(ctx, 2);
  b << Scalar::make(ctx, 5), Scalar::make(ctx, 15), Scalar::make(ctx, 10);
  c << Scalar::make(ctx, 5), Scalar::make(ctx, 15), Scalar::make(ctx, 11);
  CHECK(proportional(a, b));
  CHECK(!proportional(a, c));
}

TEST_SUITE_END();
