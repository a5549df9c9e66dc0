#include "g2cb/classifier.hpp"

#include <sstream>

#include "g2cb/rng.hpp"

namespace g2cb {

namespace {
constexpr int kVarX = 0;
constexpr int kVarY = 1;
constexpr int kVarZ0 = 2;  // z0..z4 occupy universe slots 2..6
}  // namespace

P3Point::P3Point(const Eigen::Matrix<Scalar, 4, 1>& coords) {
  int lead = -1;
  for (int i = 0; i < 4; ++i) {
    if (!coords(i).is_zero()) {
      lead = i;
      break;
    }
  }
  if (lead < 0) fail(Errc::InvalidInput, "P3Point needs a nonzero coordinate vector");
  Scalar inv = coords(lead).inverse();
  for (int i = 0; i < 4; ++i) c_(i) = coords(i) * inv;
}

bool P3Point::operator==(const P3Point& o) const {
  for (int i = 0; i < 4; ++i)
    if (c_(i) != o.c_(i)) return false;
  return true;
}

std::string P3Point::str() const {
  std::ostringstream os;
  os << "[" << c_(0) << ":" << c_(1) << ":" << c_(2) << ":" << c_(3) << "]";
  return os.str();
}

std::array<std::pair<int, int>, 15> quadric_monomials() {
  std::array<std::pair<int, int>, 15> out;
  int k = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) out[static_cast<size_t>(k++)] = {i, j};
  return out;
}

ExactVector quadric_coefficients(const MultiPoly& q) {
  FieldContext ctx = q.context();
  ExactVector v(15);
  auto monos = quadric_monomials();
  for (int k = 0; k < 15; ++k) {
    auto [i, j] = monos[static_cast<size_t>(k)];
    Expo e{};
    e[static_cast<size_t>(kVarZ0 + i)] += 1;
    e[static_cast<size_t>(kVarZ0 + j)] += 1;
    v(k) = q.coefficient(e).in_context(ctx);
  }
  return v;
}

P5 random_p4_point(const FieldContext& ctx, SeededRng& rng) {
  for (;;) {
    P5 e;
    bool nonzero = false;
    for (int i = 0; i < 5; ++i) {
      e(i) = rng.field_element(ctx);
      nonzero = nonzero || !e(i).is_zero();
    }
    if (nonzero) return e;
  }
}

namespace {

MultiPoly zvar(int i, const FieldContext& ctx) { return MultiPoly::variable(kVarZ0 + i, ctx); }

// reduce a polynomial in x, y modulo y^2 - f(x)
MultiPoly reduce_mod_curve(MultiPoly p, const MultiPoly& f) {
  for (;;) {
    bool reduced = true;
    MultiPoly out(p.context());
    for (const auto& [e, c] : p.terms()) {
      if (e[kVarY] >= 2) {
        Expo rest = e;
        rest[kVarY] = static_cast<std::uint16_t>(e[kVarY] - 2);
        out += MultiPoly::monomial(c, rest) * f;
        reduced = false;
      } else {
        out.add_term(e, c);
      }
    }
    p = std::move(out);
    if (reduced) return p;
  }
}

}  // namespace

ClassifyingMap ClassifyingMap::build(const HyperellipticCurve& curve) {
  const FieldContext& ctx = curve.context();
  const auto& f = curve.coeffs();

  std::array<MultiPoly, 4> quadrics = {
      zvar(0, ctx) * zvar(2, ctx) - zvar(1, ctx) * zvar(1, ctx),
      zvar(0, ctx) * zvar(3, ctx) - zvar(1, ctx) * zvar(2, ctx),
      zvar(1, ctx) * zvar(3, ctx) - zvar(2, ctx) * zvar(2, ctx),
      MultiPoly(ctx),
  };
  MultiPoly qf =
      zvar(0, ctx) * zvar(0, ctx) * f[0] + zvar(0, ctx) * zvar(1, ctx) * f[1] + zvar(0, ctx) * zvar(2, ctx) * f[2] +
      zvar(0, ctx) * zvar(3, ctx) * f[3] + zvar(1, ctx) * zvar(3, ctx) * f[4] + zvar(2, ctx) * zvar(3, ctx) * f[5] +
      zvar(3, ctx) * zvar(3, ctx) * f[6];
  quadrics[3] = zvar(4, ctx) * zvar(4, ctx) - qf;

  // Symbolic membership in I_C: substitute z = [1, x, x^2, x^3, y] and reduce
  // modulo y^2 - f(x); every canonical quadric must collapse to 0.
  {
    MultiPoly x = MultiPoly::variable(kVarX, ctx), y = MultiPoly::variable(kVarY, ctx);
    std::array<MultiPoly, 5> image = {MultiPoly::constant(Scalar::one(ctx)), x, x * x, x * x * x, y};
    for (const MultiPoly& q : quadrics) {
      MultiPoly sub = q;
      for (int i = 0; i < 5; ++i) sub = sub.substitute(kVarZ0 + i, image[static_cast<size_t>(i)]);
      if (!reduce_mod_curve(sub, curve.f()).is_zero())
        fail(Errc::CertificationFailure, "canonical quadric does not vanish on the curve");
    }
  }

  // Multiplication map Sym^2 H^0(w^3) -> H^0(w^6): rows (7 + 4) index the
  // basis {x^0..x^6} u {y, xy, x^2 y, x^3 y}, columns the 15 products
  // s_i s_j with s_0..s_3 = x^0..x^3 and s_4 = y; y^2 rewrites as f.
  ExactMatrix m = zeros(11, 15, ctx);
  auto monos = quadric_monomials();
  for (int col = 0; col < 15; ++col) {
    auto [i, j] = monos[static_cast<size_t>(col)];
    if (i <= 3 && j <= 3) {
      m(i + j, col) = Scalar::one(ctx);
    } else if (j == 4 && i <= 3) {
      m(7 + i, col) = Scalar::one(ctx);
    } else {  // s4^2 = f(x)
      for (int d = 0; d <= 6; ++d) m(d, col) = f[static_cast<size_t>(d)];
    }
  }
  std::vector<ExactVector> kernel = kernel_basis(m);
  if (kernel.size() != 4)
    fail(Errc::CertificationFailure,
         "kernel of the multiplication map has dimension " + std::to_string(kernel.size()) + ", expected 4");

  // span equality with the canonical basis
  ExactMatrix canon = zeros(4, 15, ctx), stacked = zeros(8, 15, ctx);
  for (int r = 0; r < 4; ++r) {
    ExactVector qc = quadric_coefficients(quadrics[static_cast<size_t>(r)]);
    for (int c = 0; c < 15; ++c) {
      canon(r, c) = qc(c);
      stacked(r, c) = qc(c);
      stacked(4 + r, c) = kernel[static_cast<size_t>(r)](c);
    }
  }
  if (rank(canon) != 4 || rank(stacked) != 4)
    fail(Errc::CertificationFailure, "canonical quadrics do not span the computed kernel of I_C(2)");

  return ClassifyingMap(curve, std::move(quadrics), std::move(m), std::move(kernel));
}

Scalar ClassifyingMap::quadric_value(int which, const P5& e) const {
  std::map<int, Scalar> point;
  for (int i = 0; i < 5; ++i) point[kVarZ0 + i] = e(i);
  return quadrics_[static_cast<size_t>(which)].eval(point);
}

bool ClassifyingMap::on_curve(const P5& e) const {
  const FieldContext& ctx = curve_.context();
  if (!e(0).is_zero()) {
    Scalar inv = e(0).inverse();
    Scalar x = e(1) * inv, z2 = e(2) * inv, z3 = e(3) * inv, y = e(4) * inv;
    return z2 == x * x && z3 == x * x * x && y * y == curve_.f_at(x);
  }
  if (!e(1).is_zero() || !e(2).is_zero() || e(3).is_zero()) return false;
  Scalar r = e(4) / e(3);
  return r * r == curve_.coeffs()[6].in_context(ctx);
}

bool ClassifyingMap::on_cone(const P5& e) const {
  for (int i = 0; i < 3; ++i)
    if (!quadric_value(i, e).is_zero()) return false;
  return true;
}

P3Point ClassifyingMap::phi(const P5& e) const {
  Eigen::Matrix<Scalar, 4, 1> img;
  bool all_zero = true;
  for (int i = 0; i < 4; ++i) {
    img(i) = quadric_value(i, e);
    all_zero = all_zero && img(i).is_zero();
  }
  if (all_zero) {
    if (on_curve(e)) fail(Errc::BaseLocus, "phi is undefined on the curve itself");
    fail(Errc::IndeterminateImage, "all quadrics vanish off the curve: base locus is not exactly C");
  }
  return P3Point(img);
}

P3Point ClassifyingMap::origin(std::uint64_t seed, int samples) const {
  const FieldContext& ctx = curve_.context();
  Eigen::Matrix<Scalar, 4, 1> o;
  o << Scalar::zero(ctx), Scalar::zero(ctx), Scalar::zero(ctx), Scalar::one(ctx);
  P3Point origin_pt(o);

  SeededRng rng = SeededRng::derive(seed, "origin_cone");
  for (int s = 0; s < samples; ++s) {
    // cone point [1 : x0 : x0^2 : x0^3 : t] with t^2 != f(x0)
    Scalar x0 = rng.field_element(ctx);
    Scalar t = rng.field_element(ctx);
    while (t * t == curve_.f_at(x0)) t = rng.field_element(ctx);
    P5 e;
    e << Scalar::one(ctx), x0, x0 * x0, x0 * x0 * x0, t;
    if (phi(e) != origin_pt)
      fail(Errc::CertificationFailure, "cone point does not map to [0:0:0:1]");
  }
  return origin_pt;
}

std::array<Scalar, 3> ClassifyingMap::delta(const P3Point& p) {
  if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero())
    fail(Errc::OriginProjection, "Delta is the projection from [0:0:0:1]");
  return {p[2], -p[1], p[0]};
}

}  // namespace g2cb
