#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g2cb/field.hpp"

namespace g2cb {

// Fixed variable universe, in term-order priority. Every polynomial's exponent
// vector lives over this list; the name set of a given polynomial is whatever
// subset actually occurs.
inline constexpr int kNumVars = 18;
inline constexpr std::array<const char*, kNumVars> kVarNames = {
    "x", "y", "z0", "z1", "z2", "z3", "z4", "s0", "s1", "s2",
    "c0", "c1", "c2", "t0", "t1", "u", "v", "H"};

int var_index(std::string_view name);  // UnknownVariable on misses

using Expo = std::array<std::uint16_t, kNumVars>;

// Graded-lexicographic, larger first (map iteration = printing order).
struct GradedLexGreater {
  bool operator()(const Expo& a, const Expo& b) const;
};

class MultiPoly {
 public:
  MultiPoly() : ctx_(FieldContext::rationals()) {}
  explicit MultiPoly(const FieldContext& ctx) : ctx_(ctx) {}

  static MultiPoly constant(const Scalar& c);
  static MultiPoly variable(int var, const FieldContext& ctx);
  static MultiPoly monomial(const Scalar& c, const Expo& e);
  static MultiPoly parse(const std::string& text, const FieldContext& ctx);

  const FieldContext& context() const { return ctx_; }
  const std::map<Expo, Scalar, GradedLexGreater>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;
  std::vector<int> variables() const;  // occurring vars, universe order
  // The single occurring variable; nullopt when none or several occur.
  std::optional<int> sole_variable() const;

  Scalar coefficient(const Expo& e) const;
  void add_term(const Expo& e, const Scalar& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
  MultiPoly& operator*=(const Scalar& c);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  MultiPoly pow(int e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Point given per variable index; every occurring variable must be present.
  Scalar eval(const std::map<int, Scalar>& point) const;
  Scalar eval_univariate(const Scalar& value) const;

  // Ring homomorphism substituting one variable.
  MultiPoly substitute(int var, const MultiPoly& replacement) const;
  MultiPoly derivative(int var) const;

  // Dense coefficients (ascending) of a univariate polynomial in `var`.
  std::vector<Scalar> dense_coeffs(int var) const;
  static MultiPoly from_dense(const std::vector<Scalar>& coeffs, int var, const FieldContext& ctx);

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

 private:
  FieldContext ctx_;
  std::map<Expo, Scalar, GradedLexGreater> terms_;
};

inline Expo unit_expo(int var, std::uint16_t e = 1) {
  Expo x{};
  x[static_cast<size_t>(var)] = e;
  return x;
}

}  // namespace g2cb
