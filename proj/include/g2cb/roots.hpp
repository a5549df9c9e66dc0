#pragma once

#include <utility>
#include <vector>

#include "g2cb/poly.hpp"

namespace g2cb {

struct RootReport {
  std::vector<std::pair<Scalar, int>> roots;  // (root, multiplicity), deterministic order
  int residual_degree = 0;                    // degree of the factor with no roots in the field
};

// All roots of a nonzero univariate polynomial in its ground field. Prime
// fields: exhaustive scan for p <= 1e6, equal-degree splitting above; Q:
// rational-root search on the primitive integer model.
RootReport univariate_roots(const MultiPoly& p);

// gcd(p, p') is a unit. Correct in small characteristic (p' may vanish).
bool squarefree_check(const MultiPoly& p);

// Monic gcd of univariate polynomials sharing one variable.
MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace g2cb
