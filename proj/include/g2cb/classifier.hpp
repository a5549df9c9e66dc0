#pragma once

#include <array>

#include "g2cb/curve.hpp"

namespace g2cb {

// Point of P^3 = |2Theta|, normalized so the first nonzero coordinate is 1.
class P3Point {
 public:
  P3Point() = default;
  explicit P3Point(const Eigen::Matrix<Scalar, 4, 1>& coords);
  const Eigen::Matrix<Scalar, 4, 1>& coords() const { return c_; }
  const Scalar& operator[](int i) const { return c_(i); }
  bool operator==(const P3Point& o) const;
  bool operator!=(const P3Point& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Eigen::Matrix<Scalar, 4, 1> c_;
};

// The 15 monomials z_i z_j (i <= j), row-major upper triangle: the coordinate
// system used for quadratic forms on P^4.
std::array<std::pair<int, int>, 15> quadric_monomials();

// The classifying map phi: P^4 --> P^3 through the quadrics of I_C(2), in the
// canonical basis
//   m0 = z0 z2 - z1^2, m1 = z0 z3 - z1 z2, m2 = z1 z3 - z2^2,
//   q3 = z4^2 - Q_f,  Q_f = f0 z0^2 + f1 z0 z1 + f2 z0 z2 + f3 z0 z3
//                          + f4 z1 z3 + f5 z2 z3 + f6 z3^2.
// Construction certifies that this span equals the kernel of the
// multiplication map Sym^2 H^0(w^3) -> H^0(w^6) and that the kernel is
// 4-dimensional. Coordinates on P^3 are canonical only relative to this basis.
class ClassifyingMap {
 public:
  static ClassifyingMap build(const HyperellipticCurve& curve);

  const HyperellipticCurve& curve() const { return curve_; }
  const std::array<MultiPoly, 4>& quadrics() const { return quadrics_; }
  int certified_dim() const { return 4; }

  // 11x15 matrix of the multiplication map (rows: basis of H^0(w^6); columns:
  // the 15 products of tri-canonical sections) and its computed kernel.
  const ExactMatrix& multiplication_matrix() const { return mult_matrix_; }
  const std::vector<ExactVector>& kernel() const { return kernel_; }

  Scalar quadric_value(int which, const P5& e) const;
  bool on_curve(const P5& e) const;
  bool on_cone(const P5& e) const;  // the three Hankel minors vanish

  // Errors: BaseLocus when e lies on C, IndeterminateImage when all four
  // quadrics vanish off C (a certification failure, never expected).
  P3Point phi(const P5& e) const;

  // [0:0:0:1], re-certified by mapping `samples` random cone points.
  P3Point origin(std::uint64_t seed, int samples = 10) const;

  // Projection from the origin: Delta = [p0:p1:p2], divisor parameter
  // c = [p2 : -p1 : p0] (the section c0 + c1 x + c2 x^2 under the chord).
  static std::array<Scalar, 3> delta(const P3Point& p);

 private:
  ClassifyingMap(HyperellipticCurve curve, std::array<MultiPoly, 4> quadrics, ExactMatrix mult_matrix,
                 std::vector<ExactVector> kernel)
      : curve_(std::move(curve)),
        quadrics_(std::move(quadrics)),
        mult_matrix_(std::move(mult_matrix)),
        kernel_(std::move(kernel)) {}

  HyperellipticCurve curve_;
  std::array<MultiPoly, 4> quadrics_;
  ExactMatrix mult_matrix_;
  std::vector<ExactVector> kernel_;
};

// Coefficient vector of a quadratic form in z0..z4 over the 15-monomial basis.
ExactVector quadric_coefficients(const MultiPoly& q);

// Random point of P^4 (not all coordinates zero), uniform per coordinate.
P5 random_p4_point(const FieldContext& ctx, SeededRng& rng);

}  // namespace g2cb
