#include "g2cb/curve.hpp"

#include "g2cb/rng.hpp"

namespace g2cb {

namespace {
constexpr int kVarX = 0;
constexpr int kVarY = 1;
}  // namespace

HyperellipticCurve HyperellipticCurve::make(const MultiPoly& f) {
  FieldContext ctx = f.context();
  if (ctx.kind() == FieldKind::Prime && ctx.modulus() <= 7)
    fail(Errc::BadCharacteristic, "genus-2 models need p > 7, got p = " + std::to_string(ctx.modulus()));
  if (!ctx.is_specified()) ctx = FieldContext::rationals();

  std::vector<int> vars = f.variables();
  if (!(vars.empty() || (vars.size() == 1 && vars[0] == kVarX)))
    fail(Errc::InvalidInput, "curve polynomial must be univariate in x");
  if (f.is_zero() || f.degree_in(kVarX) != 6)
    fail(Errc::WrongDegree, "f must have degree exactly 6 (degree-5 models are rejected)");
  if (!squarefree_check(f))
    fail(Errc::NotSmooth, "f has a repeated root; the curve y^2 = f(x) is singular");

  std::array<Scalar, 7> coeffs;
  std::vector<Scalar> dense = f.dense_coeffs(kVarX);
  for (int i = 0; i <= 6; ++i) coeffs[static_cast<size_t>(i)] = dense[static_cast<size_t>(i)].in_context(ctx);
  MultiPoly fc = f;
  if (!fc.context().is_specified()) fc = MultiPoly::from_dense(dense, kVarX, ctx);
  return HyperellipticCurve(ctx, fc, coeffs);
}

HyperellipticCurve HyperellipticCurve::from_coeffs(const FieldContext& ctx, const std::array<Scalar, 7>& coeffs) {
  MultiPoly f(ctx);
  for (int i = 0; i <= 6; ++i)
    f.add_term(unit_expo(kVarX, static_cast<std::uint16_t>(i)), coeffs[static_cast<size_t>(i)]);
  return make(f);
}

Scalar HyperellipticCurve::f_at(const Scalar& x) const { return f_.eval_univariate(x); }

CurvePoint CurvePoint::conjugate() const {
  if (at_infinity) return CurvePoint::infinite(-sign);
  return CurvePoint::affine(x, -y);
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  if (at_infinity != o.at_infinity) return false;
  if (at_infinity) return sign == o.sign;
  return x == o.x && y == o.y;
}

bool on_curve(const HyperellipticCurve& curve, const CurvePoint& pt) {
  if (pt.at_infinity) return pt.sign == 1 || pt.sign == -1;
  return pt.y * pt.y == curve.f_at(pt.x);
}

SectionBasis section_basis(const HyperellipticCurve& curve, int k) {
  if (k < 1) fail(Errc::InvalidInput, "section_basis needs k >= 1");
  const FieldContext& ctx = curve.context();
  SectionBasis basis;
  basis.k = k;
  for (int i = 0; i <= k; ++i)
    basis.plus_part.push_back(MultiPoly::monomial(Scalar::one(ctx), unit_expo(kVarX, static_cast<std::uint16_t>(i))));
  for (int j = 0; j + 3 <= k; ++j) {
    Expo e = unit_expo(kVarX, static_cast<std::uint16_t>(j));
    e[kVarY] = 1;
    basis.minus_part.push_back(MultiPoly::monomial(Scalar::one(ctx), e));
  }
  return basis;
}

WeierstrassData weierstrass_points(const HyperellipticCurve& curve) {
  RootReport report = univariate_roots(curve.f());
  WeierstrassData data;
  for (const auto& [root, mult] : report.roots) {
    // squarefree f: multiplicities are all 1
    data.roots.push_back(root);
  }
  data.residual_degree = report.residual_degree;
  return data;
}

P5 embed_tricanonical(const HyperellipticCurve& curve, const CurvePoint& pt) {
  const FieldContext& ctx = curve.context();
  P5 z;
  if (pt.at_infinity) {
    Scalar r = curve.coeffs()[6].sqrt();  // SqrtNotInField when f6 is a non-residue
    if (pt.sign < 0) r = -r;
    z << Scalar::zero(ctx), Scalar::zero(ctx), Scalar::zero(ctx), Scalar::one(ctx), r;
    return z;
  }
  Scalar x = pt.x.in_context(ctx);
  z << Scalar::one(ctx), x, x * x, x * x * x, pt.y.in_context(ctx);
  return z;
}

CurvePoint random_curve_point(const HyperellipticCurve& curve, std::uint64_t seed) {
  const FieldContext& ctx = curve.context();
  if (ctx.kind() != FieldKind::Prime)
    fail(Errc::InvalidInput, "random_curve_point needs a prime-field curve");
  SeededRng rng = SeededRng::derive(seed, "curve_point");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Scalar x = rng.field_element(ctx);
    Scalar v = curve.f_at(x);
    if (!v.is_square()) continue;
    Scalar y = v.sqrt();
    if (rng.coin()) y = -y;
    return CurvePoint::affine(x, y);
  }
  fail(Errc::Exhausted, "no square value of f(x) found in 10^4 draws; field arithmetic is broken");
}

}  // namespace g2cb
