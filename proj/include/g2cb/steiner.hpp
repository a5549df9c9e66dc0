#pragma once

#include <functional>
#include <map>
#include <mutex>

#include "g2cb/linalg.hpp"
#include "g2cb/poly.hpp"

namespace g2cb {

// Chern data (r; c1; c2) of a bundle on P^2, classes in powers of H mod H^3.
struct ChernClass {
  int rank = 0;
  long c1 = 0;
  long c2 = 0;
  bool operator==(const ChernClass&) const = default;
};

// Linear presentation 0 -> O(t-1)^source -> O(t)^target -> coker -> 0 with a
// target x source matrix of linear forms in c0, c1, c2 (coefficient triples).
struct BundlePresentation {
  int source_rank = 0;
  int target_rank = 0;
  int source_twist = 0;
  int target_twist = 0;
  std::vector<std::vector<std::array<long, 3>>> linear_forms;  // [target][source]
};

// c(coker) = c(target) / c(source) in the truncated ring.
ChernClass chern(const BundlePresentation& pres);
ChernClass dual(const ChernClass& c);
mpq_class slope(const ChernClass& c);

// chi(E(k)) on P^2 by Hirzebruch-Riemann-Roch (Todd class 1 + 3/2 H + H^2).
long euler_characteristic(const ChernClass& c, int k);

// Hoppe criterion for rank 2: h^0 of the normalized twist vanishes.
bool hoppe_stable_rank2(long c1, const std::function<int(int)>& h0_of_twist);

struct CohomologyRow {
  int k = 0;
  int h0 = 0, h1 = 0, h2 = 0;
  long chi() const { return static_cast<long>(h0) - h1 + h2; }
};

struct CohomologyTriple {
  int h0 = 0, h1 = 0, h2 = 0;
  bool operator==(const CohomologyTriple&) const = default;
};

struct EndReport {
  int hom = 0, ext1 = 0, ext2 = 0;
  int map_rank = 0;  // rank of the 16 -> 20 multiplication map
};

struct NormalBundleReport {
  std::array<int, 2> splitting = {0, 0};
  int rank = 0;
  int total_degree = 0;
  std::vector<int> module_hilbert;  // 6 consecutive internal degrees, from 6
  std::vector<int> h0_profile;      // h^0(N(m)) for m = -8..-3
};

// Canonical coset representatives of a quotient (ambient / column span):
// vectors with zeros at the pivot coordinates of the span.
class CokerBasis {
 public:
  CokerBasis() = default;
  // columns of `gens` span the subspace to quotient by
  CokerBasis(Eigen::Index ambient, const ExactMatrix& gens, const FieldContext& ctx);
  Eigen::Index ambient() const { return ambient_; }
  int dim() const { return dim_; }
  ExactVector reduce(ExactVector v) const;
  std::vector<ExactVector> basis() const;

 private:
  Eigen::Index ambient_ = 0;
  int dim_ = 0;
  ExactMatrix span_rref_;  // rows: rref of the span
  std::vector<Eigen::Index> pivots_;
  FieldContext ctx_;
};

// The rank-2 Steiner bundle A* on P^2 presented by the 4x2 matrix with
// columns (c0, c1, c2, 0) and (0, c0, c1, c2): multiplication by the
// quadratic section c against the bases {1, x} and {1, x, x^2, x^3}. The
// whole suite is curve-independent and runs over Q; H^1/H^2 are realized
// through the Serre-dual adjoint of the multiplication maps.
class SteinerLab {
 public:
  SteinerLab();

  const BundlePresentation& presentation() const { return pres_; }
  ChernClass chern_dual() const;  // c(A*) = 1 + 2H + 3H^2
  ChernClass chern_bundle() const;
  mpq_class slope_dual() const;
  bool hoppe_stable();

  CohomologyRow h_twists(int k);
  std::vector<CohomologyRow> table(int kmin, int kmax);

  // H^0(A*(k)) as canonical cosets in H^0(O(k))^4
  const CokerBasis& section_space(int k);
  // coset * linear form -> coset one twist up (well-defined on cosets)
  ExactVector section_multiply(int k, const ExactVector& coset, const std::array<Scalar, 3>& ell);

  CohomologyTriple tensor_cohomology(int k);  // A* (x) A*(k)
  CohomologyTriple sym2_cohomology(int k);    // Sym^2 A*(k)

  // (hom, ext1, ext2) = (1, 5, 0) by the dual-presentation route, cross
  // checked against End = A* (x) A*(-2).
  EndReport end_cohomology();

  // h^0 of [Sym^2 A*(-1), O(-1), A*(-1), Sym^2 A*, O, A*]; total 16
  std::array<int, 6> dim_B_summands();
  int dim_B();

  // Normal bundle of the twisted cubic in P^3 from the Jacobian/Euler
  // presentation; certifies splitting (5, 5).
  NormalBundleReport normal_bundle_splitting();

  // fiberwise injectivity of the presentation at given c (rank 2 check)
  bool presentation_injective_at(const std::array<Scalar, 3>& c) const;

 private:
  ExactMatrix presentation_map(int k);  // H^0 level, degree-k graded piece
  ExactMatrix dual_adjoint_map(int k);  // U_k: P(-k-3)^4 -> P(-k-2)^2
  // basis of H^1(A*(k)) = ker of the H^2-level map, in Serre-dual coordinates
  const std::vector<ExactVector>& h1_space(int k);
  // H^2(A*(k)) as cosets of the H^2-level map's image
  const CokerBasis& h2_space(int k);
  int rank_h0_connecting(int k);  // H0(A*(k-1)) (x) V -> H0(A*(k)) (x) Sym3 V
  int rank_h1_connecting(int k);
  int rank_h2_connecting(int k);

  FieldContext ctx_;
  BundlePresentation pres_;
  std::array<std::array<std::array<Scalar, 3>, 2>, 4> ell_;  // linear forms [i][j]

  std::mutex mu_;
  std::map<int, CohomologyRow> row_cache_;
  std::map<int, CokerBasis> space_cache_;
  std::map<int, std::vector<ExactVector>> h1_cache_;
  std::map<int, CokerBasis> h2_cache_;
};

}  // namespace g2cb
