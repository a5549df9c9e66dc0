#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "g2cb/errors.hpp"

namespace g2cb {

// 64-bit modular arithmetic kernels.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
// Legendre symbol as -1/0/1.
int legendre(std::uint64_t a, std::uint64_t p);
// Tonelli-Shanks; empty when a is a non-residue.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

enum class FieldKind : std::uint8_t {
  Integer,  // context-free integer literal, promotes on first contact
  Rationals,
  Prime,
};

class FieldContext {
 public:
  FieldContext() : kind_(FieldKind::Integer), p_(0) {}
  static FieldContext rationals() { return FieldContext(FieldKind::Rationals, 0); }
  // Requires an odd prime. Curve-level code imposes the stronger p > 7.
  static FieldContext prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  bool is_specified() const { return kind_ != FieldKind::Integer; }
  bool operator==(const FieldContext&) const = default;

  std::string str() const;

 private:
  FieldContext(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  FieldKind kind_;
  std::uint64_t p_;
};

// Merge two contexts; Integer yields to anything, Rationals vs Prime (or two
// different primes) is a ContextMismatch.
FieldContext unify(const FieldContext& a, const FieldContext& b);

// Exact field element: a reduced fraction over the rationals, or a canonical
// residue in [0, p) over a prime field. Plain integer literals start out
// context-free and land in a field on first contact with a tagged value.
class Scalar {
 public:
  Scalar() : ctx_(), rat_(0) {}
  Scalar(int v) : ctx_(), rat_(v) {}
  Scalar(long v) : ctx_(), rat_(static_cast<signed long>(v)) {}

  static Scalar zero(const FieldContext& ctx) { return make(ctx, mpz_class(0)); }
  static Scalar one(const FieldContext& ctx) { return make(ctx, mpz_class(1)); }
  static Scalar make(const FieldContext& ctx, long v) { return make(ctx, mpz_class(v)); }
  static Scalar make(const FieldContext& ctx, const mpz_class& v);
  static Scalar make(const FieldContext& ctx, const mpq_class& v);
  // Parses "a" or "a/b" (decimal) into the given context.
  static Scalar parse(const std::string& text, const FieldContext& ctx);

  const FieldContext& context() const { return ctx_; }
  Scalar in_context(const FieldContext& ctx) const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(long e) const;

  // Square root within the field; error SqrtNotInField when absent.
  Scalar sqrt() const;
  bool is_square() const;

  // Rational access (Rationals/Integer kinds only).
  const mpq_class& rational() const;
  // Residue access (Prime kind only).
  std::uint64_t residue() const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  FieldContext ctx_;
  mpq_class rat_;        // Rationals / Integer payload
  std::uint64_t res_{};  // Prime payload
};

}  // namespace g2cb

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<g2cb::Scalar> : GenericNumTraits<g2cb::Scalar> {
  typedef g2cb::Scalar Real;
  typedef g2cb::Scalar NonInteger;
  typedef g2cb::Scalar Nested;
  typedef g2cb::Scalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return g2cb::Scalar(0); }
  static inline Real dummy_precision() { return g2cb::Scalar(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
