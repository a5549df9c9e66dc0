#pragma once

#include <array>
#include <vector>

#include "g2cb/linalg.hpp"
#include "g2cb/poly.hpp"
#include "g2cb/roots.hpp"

namespace g2cb {

using P5 = Eigen::Matrix<Scalar, 5, 1>;  // tricanonical coordinates z0..z4

// Smooth genus-2 curve y^2 = f(x) with deg f = 6, f squarefree, over Q or F_p
// with p > 7. Degree-5 models are rejected, not transformed: the degree-6
// model keeps the two points at infinity and the involution z4 -> -z4.
class HyperellipticCurve {
 public:
  static HyperellipticCurve make(const MultiPoly& f);
  static HyperellipticCurve from_coeffs(const FieldContext& ctx, const std::array<Scalar, 7>& coeffs);

  const FieldContext& context() const { return ctx_; }
  const MultiPoly& f() const { return f_; }
  const std::array<Scalar, 7>& coeffs() const { return coeffs_; }
  Scalar f_at(const Scalar& x) const;

 private:
  HyperellipticCurve(FieldContext ctx, MultiPoly f, std::array<Scalar, 7> coeffs)
      : ctx_(std::move(ctx)), f_(std::move(f)), coeffs_(std::move(coeffs)) {}
  FieldContext ctx_;
  MultiPoly f_;
  std::array<Scalar, 7> coeffs_;
};

struct CurvePoint {
  static CurvePoint affine(Scalar x, Scalar y) { return CurvePoint{false, std::move(x), std::move(y), 0}; }
  static CurvePoint infinite(int sign) { return CurvePoint{true, Scalar(0), Scalar(0), sign}; }

  bool at_infinity = false;
  Scalar x, y;
  int sign = 0;  // branch where y/x^3 -> sign * sqrt(f6)

  // hyperelliptic involution y -> -y (swaps the two infinite branches)
  CurvePoint conjugate() const;
  bool operator==(const CurvePoint& o) const;
};

bool on_curve(const HyperellipticCurve& curve, const CurvePoint& pt);

// Monomial basis of H^0(omega^k), split into involution eigenspaces: the plus
// part x^i (i <= k) is fixed by y -> -y, the minus part x^j*y (j <= k-3) is
// negated. dim = 2k-1 for k >= 2.
struct SectionBasis {
  int k = 0;
  std::vector<MultiPoly> plus_part;
  std::vector<MultiPoly> minus_part;
  int dim() const { return static_cast<int>(plus_part.size() + minus_part.size()); }
};

SectionBasis section_basis(const HyperellipticCurve& curve, int k);

struct WeierstrassData {
  std::vector<Scalar> roots;  // x-coordinates, all multiplicity 1
  int residual_degree = 0;
  bool all_rational() const { return residual_degree == 0; }
};

WeierstrassData weierstrass_points(const HyperellipticCurve& curve);

// [1 : x : x^2 : x^3 : y]; infinite points need sqrt(f6) in the field.
P5 embed_tricanonical(const HyperellipticCurve& curve, const CurvePoint& pt);

// Uniform point: draw x until f(x) is a square (Euler criterion), take an
// exact square root. Prime fields only; deterministic per seed.
CurvePoint random_curve_point(const HyperellipticCurve& curve, std::uint64_t seed);

}  // namespace g2cb
