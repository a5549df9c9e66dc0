#include "g2cb/fiberlab.hpp"

namespace g2cb {

namespace {
constexpr int kVarX = 0;
constexpr int kVarZ0 = 2;
constexpr int kVarS0 = 7;
constexpr int kVarT0 = 13;
constexpr int kVarT1 = 14;

bool param_is_zero(const P2Param& c) { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
}  // namespace

PlaneForDivisor plane_for_parameter(const HyperellipticCurve& curve, const P2Param& c_in) {
  const FieldContext& ctx = curve.context();
  P2Param c = {c_in[0].in_context(ctx), c_in[1].in_context(ctx), c_in[2].in_context(ctx)};
  if (param_is_zero(c)) fail(Errc::ZeroParameter, "divisor parameter must be nonzero");

  ExactMatrix cond = zeros(2, 5, ctx);
  cond(0, 0) = c[0];
  cond(0, 1) = c[1];
  cond(0, 2) = c[2];
  cond(1, 1) = c[0];
  cond(1, 2) = c[1];
  cond(1, 3) = c[2];
  RrefResult r = rref(cond);
  if (r.rank != 2) fail(Errc::CertificationFailure, "plane conditions are not independent");

  std::vector<ExactVector> basis = kernel_basis(cond);
  // free columns ascend, and column 4 (the vertex direction) is always free,
  // so the vertex lands last
  PlaneForDivisor plane;
  plane.c = c;
  std::vector<bool> is_pivot(5, false);
  for (Eigen::Index p : r.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
  int fc_idx = 0;
  for (Eigen::Index col = 0; col < 5; ++col)
    if (!is_pivot[static_cast<size_t>(col)]) plane.free_cols[static_cast<size_t>(fc_idx++)] = col;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 5; ++i) plane.basis(i, j) = basis[static_cast<size_t>(j)](i);
  return plane;
}

Eigen::Matrix<Scalar, 3, 1> PlaneForDivisor::coordinates_of(const P5& point) const {
  Eigen::Matrix<Scalar, 3, 1> s;
  for (int j = 0; j < 3; ++j) s(j) = point(free_cols[static_cast<size_t>(j)]);
  P5 recon = basis * s;
  for (int i = 0; i < 5; ++i)
    if (recon(i) != point(i)) fail(Errc::InvalidInput, "point does not lie on the plane");
  return s;
}

int Conic::rank() const {
  ExactMatrix m = gram_;
  return static_cast<int>(g2cb::rank(m));
}

Scalar Conic::value(const Eigen::Matrix<Scalar, 3, 1>& s) const {
  Scalar acc = Scalar(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += s(i) * gram_(i, j) * s(j);
  return acc;
}

bool Conic::is_zero() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!gram_(i, j).is_zero()) return false;
  return true;
}

namespace {
// row-major upper triangle scan order for Gram entries
constexpr int kGramOrder[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
}  // namespace

bool Conic::proportional_to(const Conic& o) const {
  int lead = -1;
  for (int k = 0; k < 6; ++k) {
    if (!gram_(kGramOrder[k][0], kGramOrder[k][1]).is_zero() ||
        !o.gram_(kGramOrder[k][0], kGramOrder[k][1]).is_zero()) {
      lead = k;
      break;
    }
  }
  if (lead < 0) return false;
  Scalar a = gram_(kGramOrder[lead][0], kGramOrder[lead][1]);
  Scalar b = o.gram_(kGramOrder[lead][0], kGramOrder[lead][1]);
  if (a.is_zero() || b.is_zero()) return false;
  for (int k = 0; k < 6; ++k) {
    const Scalar& x = gram_(kGramOrder[k][0], kGramOrder[k][1]);
    const Scalar& y = o.gram_(kGramOrder[k][0], kGramOrder[k][1]);
    if (a * y != b * x) return false;
  }
  return true;
}

Conic Conic::normalized() const {
  for (int k = 0; k < 6; ++k) {
    const Scalar& e = gram_(kGramOrder[k][0], kGramOrder[k][1]);
    if (!e.is_zero()) {
      Eigen::Matrix<Scalar, 3, 3> g = gram_;
      Scalar inv = e.inverse();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) *= inv;
      return Conic(g);
    }
  }
  return *this;
}

bool Conic::even_in_s2() const {
  return gram_(0, 2).is_zero() && gram_(1, 2).is_zero();
}

Conic restrict_quadric(const MultiPoly& q, const PlaneForDivisor& plane) {
  FieldContext ctx = unify(q.context(), plane.basis(0, 0).context());
  // z_i -> sum_j basis(i, j) s_j
  MultiPoly restricted = q;
  for (int i = 0; i < 5; ++i) {
    MultiPoly lin(ctx);
    for (int j = 0; j < 3; ++j)
      lin += MultiPoly::variable(kVarS0 + j, ctx) * plane.basis(i, j);
    restricted = restricted.substitute(kVarZ0 + i, lin);
  }
  Eigen::Matrix<Scalar, 3, 3> gram;
  Scalar half = Scalar::one(ctx) / Scalar::make(ctx, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Expo e{};
      e[static_cast<size_t>(kVarS0 + i)] += 1;
      e[static_cast<size_t>(kVarS0 + j)] += 1;
      Scalar coeff = restricted.coefficient(e);
      if (i == j) {
        gram(i, i) = coeff;
      } else {
        gram(i, j) = coeff * half;
        gram(j, i) = gram(i, j);
      }
    }
  }
  return Conic(gram);
}

Conic PencilFamily::member(const Scalar& t0, const Scalar& t1) const {
  Eigen::Matrix<Scalar, 3, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t0 * g1.gram()(i, j) - t1 * g0.gram()(i, j);
  return Conic(m);
}

P3Point PencilFamily::image_point(const Scalar& t0, const Scalar& t1) const {
  Eigen::Matrix<Scalar, 4, 1> p;
  p << d[0] * t0, d[1] * t0, d[2] * t0, t1;
  return P3Point(p);
}

PencilFamily pencil_for_parameter(const ClassifyingMap& cm, const P2Param& c) {
  const FieldContext& ctx = cm.curve().context();
  PencilFamily fam;
  fam.plane = plane_for_parameter(cm.curve(), c);

  std::array<Conic, 3> minors;
  for (int i = 0; i < 3; ++i) minors[static_cast<size_t>(i)] = restrict_quadric(cm.quadrics()[static_cast<size_t>(i)], fam.plane);

  // restricted minors span a rank-1 space of conics
  ExactMatrix coeff = zeros(3, 6, ctx);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 6; ++k)
      coeff(i, k) = minors[static_cast<size_t>(i)].gram()(kGramOrder[k][0], kGramOrder[k][1]);
  if (rank(coeff) != 1)
    fail(Errc::CertificationFailure, "restricted Hankel minors do not span a line of conics");

  int lead_minor = -1;
  for (int i = 0; i < 3 && lead_minor < 0; ++i)
    if (!minors[static_cast<size_t>(i)].is_zero()) lead_minor = i;
  fam.g0 = minors[static_cast<size_t>(lead_minor)].normalized();

  int lead_entry = -1;
  for (int k = 0; k < 6 && lead_entry < 0; ++k)
    if (!fam.g0.gram()(kGramOrder[k][0], kGramOrder[k][1]).is_zero()) lead_entry = k;
  for (int i = 0; i < 3; ++i) {
    fam.d[static_cast<size_t>(i)] =
        minors[static_cast<size_t>(i)].gram()(kGramOrder[lead_entry][0], kGramOrder[lead_entry][1]);
    // exact proportionality m_i|plane = d_i G0
    for (int k = 0; k < 6; ++k) {
      Scalar expect = fam.d[static_cast<size_t>(i)] * fam.g0.gram()(kGramOrder[k][0], kGramOrder[k][1]);
      if (minors[static_cast<size_t>(i)].gram()(kGramOrder[k][0], kGramOrder[k][1]) != expect)
        fail(Errc::CertificationFailure, "restricted minor is not a multiple of G0");
    }
  }

  // consistency c = [d2 : -d1 : d0]
  ExactVector cv(3), dv(3);
  cv << fam.plane.c[0], fam.plane.c[1], fam.plane.c[2];
  dv << fam.d[2], -fam.d[1], fam.d[0];
  if (!proportional(cv, dv))
    fail(Errc::CertificationFailure, "pencil direction does not match the divisor parameter");

  fam.g1 = restrict_quadric(cm.quadrics()[3], fam.plane);
  return fam;
}

const char* fiber_class_name(FiberClass c) {
  switch (c) {
    case FiberClass::stable: return "stable";
    case FiberClass::semistable_boundary: return "semistable_boundary";
    case FiberClass::two_torsion: return "two_torsion";
  }
  return "?";
}

SectionRoots section_roots(const P2Param& c, const FieldContext& ctx) {
  SectionRoots out;
  MultiPoly section(ctx);
  for (int i = 0; i < 3; ++i)
    section.add_term(unit_expo(kVarX, static_cast<std::uint16_t>(i)), c[static_cast<size_t>(i)]);
  if (section.is_zero()) fail(Errc::ZeroParameter, "zero section has no divisor");
  int deg = std::max(section.total_degree(), 0);
  out.infinite_multiplicity = 2 - deg;
  if (deg >= 1) {
    RootReport rr = univariate_roots(section);
    out.finite_roots = rr.roots;
    out.residual_degree = rr.residual_degree;
  }
  return out;
}

namespace {

// divisor points of c embedded in P^4, when they exist over the field
std::optional<std::vector<P5>> try_divisor_points(const ClassifyingMap& cm, const P2Param& c) {
  const HyperellipticCurve& curve = cm.curve();
  SectionRoots roots = section_roots(c, curve.context());
  if (roots.residual_degree > 0) return std::nullopt;
  for (const auto& [r, mult] : roots.finite_roots)
    if (mult > 1) return std::nullopt;
  if (roots.infinite_multiplicity > 1) return std::nullopt;

  std::vector<P5> points;
  for (const auto& [r, mult] : roots.finite_roots) {
    Scalar v = curve.f_at(r);
    if (!v.is_square()) return std::nullopt;
    Scalar y = v.sqrt();
    points.push_back(embed_tricanonical(curve, CurvePoint::affine(r, y)));
    if (!y.is_zero()) points.push_back(embed_tricanonical(curve, CurvePoint::affine(r, -y)));
  }
  if (roots.infinite_multiplicity == 1) {
    if (!curve.coeffs()[6].is_square()) return std::nullopt;
    points.push_back(embed_tricanonical(curve, CurvePoint::infinite(+1)));
    points.push_back(embed_tricanonical(curve, CurvePoint::infinite(-1)));
  }
  return points;
}

FiberClass classify_rank(int rank) {
  switch (rank) {
    case 3: return FiberClass::stable;
    case 2: return FiberClass::semistable_boundary;
    case 1: return FiberClass::two_torsion;
  }
  fail(Errc::CertificationFailure, "fiber conic has rank 0");
}

}  // namespace

FiberResult fiber_conic(const ClassifyingMap& cm, const P3Point& p) {
  if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero())
    fail(Errc::OriginFiber, "the fiber over the origin is the cone, not a conic");
  P2Param c = ClassifyingMap::delta(p);
  PencilFamily fam = pencil_for_parameter(cm, c);

  int lead = -1;
  for (int i = 0; i < 3 && lead < 0; ++i)
    if (!fam.d[static_cast<size_t>(i)].is_zero()) lead = i;
  Scalar t0 = p[lead] / fam.d[static_cast<size_t>(lead)];
  Scalar t1 = p[3];
  for (int i = 0; i < 3; ++i)
    if (fam.d[static_cast<size_t>(i)] * t0 != p[i])
      fail(Errc::CertificationFailure, "point is not on the image line of its pencil");

  FiberResult out;
  out.conic = fam.member(t0, t1);
  out.cls = classify_rank(out.conic.rank());

  if (auto points = try_divisor_points(cm, c)) {
    bool ok = true;
    for (const P5& pt : *points) {
      Eigen::Matrix<Scalar, 3, 1> s = fam.plane.coordinates_of(pt);
      if (!out.conic.value(s).is_zero()) ok = false;
    }
    out.divisor_checked = ok;
  }
  return out;
}

DegenerateMembers degenerate_members(const ClassifyingMap& cm, const P2Param& c) {
  const FieldContext& ctx = cm.curve().context();
  PencilFamily fam = pencil_for_parameter(cm, c);

  // discriminant cubic det(t0 Gram(G1) - t1 Gram(G0))
  MultiPoly t0 = MultiPoly::variable(kVarT0, ctx), t1 = MultiPoly::variable(kVarT1, ctx);
  std::array<std::array<MultiPoly, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = t0 * fam.g1.gram()(i, j) - t1 * fam.g0.gram()(i, j);
  auto det2 = [&](int i0, int i1, int j0, int j1) {
    return m[static_cast<size_t>(i0)][static_cast<size_t>(j0)] * m[static_cast<size_t>(i1)][static_cast<size_t>(j1)] -
           m[static_cast<size_t>(i0)][static_cast<size_t>(j1)] * m[static_cast<size_t>(i1)][static_cast<size_t>(j0)];
  };
  MultiPoly delta = m[0][0] * det2(1, 2, 1, 2) - m[0][1] * det2(1, 2, 0, 2) + m[0][2] * det2(1, 2, 0, 1);
  if (delta.is_zero())
    fail(Errc::CertificationFailure, "discriminant cubic vanishes identically");

  // coefficient of t0^a t1^(3-a)
  auto coeff = [&](int a) {
    Expo e{};
    e[kVarT0] = static_cast<std::uint16_t>(a);
    e[kVarT1] = static_cast<std::uint16_t>(3 - a);
    return delta.coefficient(e);
  };
  if (!coeff(0).is_zero())
    fail(Errc::CertificationFailure, "t0 does not divide the discriminant cubic");

  // factor out the full power of t0
  int k;
  std::vector<Scalar> rem;  // remaining form coefficients by ascending t0 power
  {
    std::vector<Scalar> cs = {coeff(0), coeff(1), coeff(2), coeff(3)};
    size_t first = 0;
    while (first < 4 && cs[first].is_zero()) ++first;
    k = static_cast<int>(first);
    rem.assign(cs.begin() + static_cast<long>(first), cs.end());
  }

  DegenerateMembers out;
  auto add_member = [&](const Scalar& rt0, const Scalar& rt1, int mult) {
    DegenerateMember dm;
    dm.t0 = rt0;
    dm.t1 = rt1;
    dm.multiplicity = mult;
    dm.image = fam.image_point(rt0, rt1);
    dm.rank = fam.member(rt0, rt1).rank();
    out.members.push_back(std::move(dm));
  };
  add_member(Scalar::zero(ctx), Scalar::one(ctx), k);

  // remaining binary form g with t0-coefficients rem[0..m], t0 does not divide
  int mdeg = static_cast<int>(rem.size()) - 1;
  if (mdeg >= 1) {
    MultiPoly g = MultiPoly::from_dense(rem, kVarT0, ctx);  // g(t0, 1)
    RootReport rr = univariate_roots(g);
    for (const auto& [root, mult] : rr.roots) add_member(root, Scalar::one(ctx), mult);
    int inf_mult = mdeg - g.degree_in(kVarT0);
    if (inf_mult > 0) add_member(Scalar::one(ctx), Scalar::zero(ctx), inf_mult);
    out.unsplit_residual_degree = rr.residual_degree;
    if (rr.residual_degree == 2 && rem.size() == 3)
      out.residual_discriminant = rem[1] * rem[1] - Scalar::make(ctx, 4) * rem[0] * rem[2];
  }
  return out;
}

}  // namespace g2cb
