#pragma once

#include <Eigen/Core>
#include <vector>

#include "g2cb/field.hpp"

namespace g2cb {

using ExactMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct RrefResult {
  ExactMatrix rref;
  Eigen::Index rank = 0;
  std::vector<Eigen::Index> pivot_cols;
};

// Shared context of all specified entries; ContextMismatch when mixed.
// An all-literal matrix defaults to Q.
FieldContext matrix_context(const ExactMatrix& m);

// Unique reduced row echelon form, first-nonzero-row pivoting.
RrefResult rref(const ExactMatrix& m);

Eigen::Index rank(const ExactMatrix& m);

// Right-kernel basis, one vector per free column (ascending), with a unit in
// the free column.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

bool is_zero_vector(const ExactVector& v);

// v and w proportional as projective vectors (both nonzero).
bool proportional(const ExactVector& v, const ExactVector& w);

ExactMatrix zeros(Eigen::Index rows, Eigen::Index cols, const FieldContext& ctx);
ExactMatrix identity(Eigen::Index n, const FieldContext& ctx);

}  // namespace g2cb
