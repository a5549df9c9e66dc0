#include "g2cb/linalg.hpp"

namespace g2cb {

FieldContext matrix_context(const ExactMatrix& m) {
  FieldContext ctx;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) ctx = unify(ctx, m(i, j).context());
  if (!ctx.is_specified()) ctx = FieldContext::rationals();
  return ctx;
}

RrefResult rref(const ExactMatrix& m) {
  FieldContext ctx = matrix_context(m);
  RrefResult out;
  out.rref = m;
  ExactMatrix& a = out.rref;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).in_context(ctx);

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r) {
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    Scalar inv = a(row, col).inverse();
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      Scalar factor = a(r, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(r, j) -= factor * a(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

Eigen::Index rank(const ExactMatrix& m) { return rref(m).rank; }

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  RrefResult r = rref(m);
  FieldContext ctx = matrix_context(r.rref);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Eigen::Index p : r.pivot_cols) is_pivot[p] = true;

  std::vector<ExactVector> basis;
  for (Eigen::Index fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    ExactVector v(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(j) = Scalar::zero(ctx);
    v(fc) = Scalar::one(ctx);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(r.pivot_cols.size()); ++k)
      v(r.pivot_cols[k]) = -r.rref(k, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_zero_vector(const ExactVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

bool proportional(const ExactVector& v, const ExactVector& w) {
  if (v.size() != w.size()) return false;
  Eigen::Index lead = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero() || !w(i).is_zero()) {
      lead = i;
      break;
    }
  }
  if (lead < 0) return false;  // both zero: not projective points
  if (v(lead).is_zero() || w(lead).is_zero()) return false;
  for (Eigen::Index i = lead + 1; i < v.size(); ++i)
    if (v(lead) * w(i) != w(lead) * v(i)) return false;
  return true;
}

ExactMatrix zeros(Eigen::Index rows, Eigen::Index cols, const FieldContext& ctx) {
  ExactMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Scalar::zero(ctx);
  return m;
}

ExactMatrix identity(Eigen::Index n, const FieldContext& ctx) {
  ExactMatrix m = zeros(n, n, ctx);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar::one(ctx);
  return m;
}

}  // namespace g2cb
