#pragma once

#include <optional>

#include "g2cb/classifier.hpp"

namespace g2cb {

using P2Param = std::array<Scalar, 3>;  // divisor parameter c <-> section c0 + c1 x + c2 x^2

// The plane <D> in P^4 cut out by c0 z0 + c1 z1 + c2 z2 = 0 and
// c0 z1 + c1 z2 + c2 z3 = 0, with deterministic basis columns u0, u1, u2 and
// u2 = [0:0:0:0:1] (the vertex) always last.
struct PlaneForDivisor {
  P2Param c;
  Eigen::Matrix<Scalar, 5, 3> basis;
  // free columns of the condition matrix; plane coordinates of a point on the
  // plane can be read off at these positions
  std::array<Eigen::Index, 3> free_cols;

  // plane coordinates s with basis * s = point (InvalidInput if off-plane)
  Eigen::Matrix<Scalar, 3, 1> coordinates_of(const P5& point) const;
};

PlaneForDivisor plane_for_parameter(const HyperellipticCurve& curve, const P2Param& c);

// Conic in plane coordinates s0, s1, s2, held as its symmetric Gram matrix.
// rank 3 <-> smooth, 2 <-> line pair, 1 <-> double line (char != 2).
class Conic {
 public:
  Conic() = default;
  explicit Conic(Eigen::Matrix<Scalar, 3, 3> gram) : gram_(std::move(gram)) {}
  const Eigen::Matrix<Scalar, 3, 3>& gram() const { return gram_; }
  int rank() const;
  Scalar value(const Eigen::Matrix<Scalar, 3, 1>& s) const;
  bool is_zero() const;
  bool proportional_to(const Conic& o) const;
  // normalized so the first nonzero Gram entry (row-major upper triangle) is 1
  Conic normalized() const;
  // no s0 s2 / s1 s2 cross terms: even under the plane involution s2 -> -s2
  bool even_in_s2() const;

 private:
  Eigen::Matrix<Scalar, 3, 3> gram_;
};

// Gram matrix of a quadratic form in z0..z4 restricted to a plane.
Conic restrict_quadric(const MultiPoly& q, const PlaneForDivisor& plane);

// Restriction of the classifying map to the plane of c: the three Hankel
// minors restrict to multiples d_i * G0 of one conic (certified), q3
// restricts to G1, and the image line is [d0 t0 : d1 t0 : d2 t0 : t1].
// member(t0, t1) = t0 G1 - t1 G0, so member(0, 1) = -G0 is the origin member.
struct PencilFamily {
  PlaneForDivisor plane;
  Conic g0;
  Conic g1;
  std::array<Scalar, 3> d;

  Conic member(const Scalar& t0, const Scalar& t1) const;
  P3Point image_point(const Scalar& t0, const Scalar& t1) const;
};

PencilFamily pencil_for_parameter(const ClassifyingMap& cm, const P2Param& c);

enum class FiberClass { stable, semistable_boundary, two_torsion };
const char* fiber_class_name(FiberClass c);

struct FiberResult {
  Conic conic;
  FiberClass cls;
  // set when c splits with rational y-lifts: the conic vanishes at all four
  // divisor points; nullopt when the check is untestable over the field
  std::optional<bool> divisor_checked;
};

// The fiber of phi over p != origin, through the plane/pencil route.
FiberResult fiber_conic(const ClassifyingMap& cm, const P3Point& p);

struct DegenerateMember {
  Scalar t0, t1;
  int multiplicity = 1;
  P3Point image;
  int rank = 0;
};

struct DegenerateMembers {
  std::vector<DegenerateMember> members;  // origin member (0:1) always present
  int unsplit_residual_degree = 0;
  std::optional<Scalar> residual_discriminant;
};

// Roots of the discriminant cubic det(t0 Gram(G1) - t1 Gram(G0)); certifies
// that t0 divides it (the origin member is degenerate).
DegenerateMembers degenerate_members(const ClassifyingMap& cm, const P2Param& c);

// Points of P^1 where the section c0 + c1 x + c2 x^2 vanishes, as (x-value,
// at_infinity) pairs; used for divisor-point checks.
struct SectionRoots {
  std::vector<std::pair<Scalar, int>> finite_roots;  // (root, multiplicity)
  int infinite_multiplicity = 0;
  int residual_degree = 0;
};
SectionRoots section_roots(const P2Param& c, const FieldContext& ctx);

}  // namespace g2cb
