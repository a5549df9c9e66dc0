#pragma once

#include "g2cb/fiberlab.hpp"

namespace g2cb {

// Quartic surface in P^3, held over the 35 degree-4 monomials in p0..p3
// (graded-lex order) and normalized so the first nonzero coefficient is 1.
class QuarticSurface {
 public:
  QuarticSurface() = default;
  explicit QuarticSurface(ExactVector coeffs);

  static const std::vector<std::array<int, 4>>& monomials();    // degree 4
  static const std::vector<std::array<int, 4>>& cubic_monomials();

  const ExactVector& coeffs() const { return coeffs_; }
  Scalar value(const P3Point& p) const;
  // the four partial derivatives, evaluated
  std::array<Scalar, 4> gradient(const P3Point& p) const;

 private:
  ExactVector coeffs_;
};

// n images of random interior points of random chords of C (endpoints
// distinct and non-conjugate). Prime fields only; deterministic by seed.
std::vector<P3Point> sample_secant_images(const ClassifyingMap& cm, int n, std::uint64_t seed);

// Interpolates the unique quartic through the samples; certifies quartic
// nullity exactly 1 and cubic nullity 0 (the surface has degree exactly 4).
QuarticSurface kummer_quartic(const ClassifyingMap& cm, const std::vector<P3Point>& samples);

struct NodeCertificate {
  std::vector<P3Point> nodes;  // 15 Weierstrass chord images + origin (last)
  bool all_distinct = false;
};

// The 16 singular points: quartic and all four partials vanish at each, the
// 15 chord images carry rank-1 fibers, and all 16 are pairwise distinct.
// SkippedUnsplit unless all six Weierstrass x-roots are rational.
NodeCertificate node_certificate(const ClassifyingMap& cm, const QuarticSurface& quartic,
                                 std::uint64_t seed);

// Image of an interior point of the chord of two Weierstrass roots.
P3Point weierstrass_chord_image(const ClassifyingMap& cm, const Scalar& wi, const Scalar& wj,
                                std::uint64_t seed);

// Lowest-degree part of the quartic in the chart p3 = 1 around [0:0:0:1]:
// certifies degree 2 and proportionality to p1^2 - 4 p0 p2; returns the
// factor alpha != 0.
Scalar tangent_cone_check(const QuarticSurface& quartic);

// Unordered root pairs of c0 x0^2 + c1 x0 x1 + c2 x1^2 on P^1: 2 off the
// conic c1^2 = 4 c0 c2, 1 on it.
int sym_cover_count(const P2Param& c);

struct DiscriminantCrosscheck {
  int pencils_checked = 0;
  int degenerate_images_on_quartic = 0;
  int stable_points_checked = 0;
  int kummer_samples_checked = 0;
  bool passed = false;
};

// Exact sweep: degenerate-member images land on the quartic, stable points
// have rank 3 and lie off it, Kummer samples have fiber rank <= 2.
DiscriminantCrosscheck discriminant_crosscheck(const ClassifyingMap& cm, const QuarticSurface& quartic,
                                               int n, std::uint64_t seed);

}  // namespace g2cb
