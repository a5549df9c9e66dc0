#include "g2cb/kummer.hpp"

#include <algorithm>

#include "g2cb/rng.hpp"

namespace g2cb {

namespace {

std::vector<std::array<int, 4>> monomials_of_degree(int d) {
  // graded-lex, descending on (e0, e1, e2, e3)
  std::vector<std::array<int, 4>> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      for (int c = d - a - b; c >= 0; --c) out.push_back({a, b, c, d - a - b - c});
  return out;
}

Scalar eval_monomial(const std::array<int, 4>& e, const P3Point& p) {
  Scalar acc = Scalar(1);
  for (int i = 0; i < 4; ++i)
    if (e[static_cast<size_t>(i)] > 0) acc *= p[i].pow(e[static_cast<size_t>(i)]);
  return acc;
}

}  // namespace

const std::vector<std::array<int, 4>>& QuarticSurface::monomials() {
  static const std::vector<std::array<int, 4>> m = monomials_of_degree(4);
  return m;
}

const std::vector<std::array<int, 4>>& QuarticSurface::cubic_monomials() {
  static const std::vector<std::array<int, 4>> m = monomials_of_degree(3);
  return m;
}

QuarticSurface::QuarticSurface(ExactVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != 35) fail(Errc::InvalidInput, "quartic needs 35 coefficients");
  Eigen::Index lead = -1;
  for (Eigen::Index i = 0; i < 35; ++i) {
    if (!coeffs_(i).is_zero()) {
      lead = i;
      break;
    }
  }
  if (lead < 0) fail(Errc::InvalidInput, "zero quartic");
  Scalar inv = coeffs_(lead).inverse();
  for (Eigen::Index i = 0; i < 35; ++i) coeffs_(i) = coeffs_(i) * inv;
}

Scalar QuarticSurface::value(const P3Point& p) const {
  Scalar acc = Scalar(0).in_context(coeffs_(0).context());
  const auto& monos = monomials();
  for (Eigen::Index i = 0; i < 35; ++i)
    if (!coeffs_(i).is_zero()) acc += coeffs_(i) * eval_monomial(monos[static_cast<size_t>(i)], p);
  return acc;
}

std::array<Scalar, 4> QuarticSurface::gradient(const P3Point& p) const {
  FieldContext ctx = coeffs_(0).context();
  std::array<Scalar, 4> grad = {Scalar::zero(ctx), Scalar::zero(ctx), Scalar::zero(ctx), Scalar::zero(ctx)};
  const auto& monos = monomials();
  for (Eigen::Index i = 0; i < 35; ++i) {
    if (coeffs_(i).is_zero()) continue;
    const auto& e = monos[static_cast<size_t>(i)];
    for (int v = 0; v < 4; ++v) {
      if (e[static_cast<size_t>(v)] == 0) continue;
      Scalar term = coeffs_(i) * Scalar::make(ctx, e[static_cast<size_t>(v)]);
      for (int w = 0; w < 4; ++w) {
        int exp = e[static_cast<size_t>(w)] - (w == v ? 1 : 0);
        if (exp > 0) term *= p[w].pow(exp);
      }
      grad[static_cast<size_t>(v)] += term;
    }
  }
  return grad;
}

namespace {

// chord interior point: embedded a + mu * embedded b, off the curve
P5 chord_point(const ClassifyingMap& cm, const P5& a, const P5& b, SeededRng& rng) {
  const FieldContext& ctx = cm.curve().context();
  for (;;) {
    Scalar mu = rng.nonzero_field_element(ctx);
    P5 e = a + b * mu;
    if (!cm.on_curve(e)) return e;
  }
}

}  // namespace

std::vector<P3Point> sample_secant_images(const ClassifyingMap& cm, int n, std::uint64_t seed) {
  const HyperellipticCurve& curve = cm.curve();
  std::vector<P3Point> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::string label = "secant/" + std::to_string(i);
    SeededRng rng = SeededRng::derive(seed, label);
    for (int retry = 0;; ++retry) {
      CurvePoint a = random_curve_point(curve, SeededRng::hash_label(seed, label + "/a" + std::to_string(retry)));
      CurvePoint b = random_curve_point(curve, SeededRng::hash_label(seed, label + "/b" + std::to_string(retry)));
      if (a.x == b.x) continue;  // same or conjugate point: not a chord
      P5 e = chord_point(cm, embed_tricanonical(curve, a), embed_tricanonical(curve, b), rng);
      out.push_back(cm.phi(e));
      break;
    }
  }
  return out;
}

QuarticSurface kummer_quartic(const ClassifyingMap& cm, const std::vector<P3Point>& samples) {
  if (samples.size() < 45) fail(Errc::InvalidInput, "need at least 45 secant-image samples");
  const FieldContext& ctx = cm.curve().context();

  const auto& quartics = QuarticSurface::monomials();
  ExactMatrix m = zeros(static_cast<Eigen::Index>(samples.size()), 35, ctx);
  for (size_t r = 0; r < samples.size(); ++r)
    for (int c = 0; c < 35; ++c)
      m(static_cast<Eigen::Index>(r), c) = eval_monomial(quartics[static_cast<size_t>(c)], samples[r]);
  std::vector<ExactVector> null = kernel_basis(m);
  if (null.empty()) fail(Errc::NoQuartic, "no quartic interpolates the secant images");
  if (null.size() > 1)
    fail(Errc::AmbiguousQuartic,
         "quartic nullity " + std::to_string(null.size()) + "; resample with more points");

  const auto& cubics = QuarticSurface::cubic_monomials();
  ExactMatrix mc = zeros(static_cast<Eigen::Index>(samples.size()), 20, ctx);
  for (size_t r = 0; r < samples.size(); ++r)
    for (int c = 0; c < 20; ++c)
      mc(static_cast<Eigen::Index>(r), c) = eval_monomial(cubics[static_cast<size_t>(c)], samples[r]);
  if (!kernel_basis(mc).empty())
    fail(Errc::CubicVanishes, "a cubic interpolates the samples: surface degree is not 4");

  return QuarticSurface(null[0]);
}

P3Point weierstrass_chord_image(const ClassifyingMap& cm, const Scalar& wi, const Scalar& wj,
                                std::uint64_t seed) {
  const HyperellipticCurve& curve = cm.curve();
  const FieldContext& ctx = curve.context();
  SeededRng rng = SeededRng::derive(seed, "weierstrass_chord/" + wi.str() + "/" + wj.str());
  P5 a = embed_tricanonical(curve, CurvePoint::affine(wi.in_context(ctx), Scalar::zero(ctx)));
  P5 b = embed_tricanonical(curve, CurvePoint::affine(wj.in_context(ctx), Scalar::zero(ctx)));
  return cm.phi(chord_point(cm, a, b, rng));
}

NodeCertificate node_certificate(const ClassifyingMap& cm, const QuarticSurface& quartic,
                                 std::uint64_t seed) {
  const HyperellipticCurve& curve = cm.curve();
  WeierstrassData w = weierstrass_points(curve);
  if (!w.all_rational())
    fail(Errc::SkippedUnsplit, "only " + std::to_string(w.roots.size()) +
                                   " of 6 Weierstrass roots are rational; node set incomplete");

  NodeCertificate cert;
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = i + 1; j < 6; ++j)
      cert.nodes.push_back(weierstrass_chord_image(cm, w.roots[i], w.roots[j], seed));
  cert.nodes.push_back(cm.origin(seed));

  for (const P3Point& node : cert.nodes) {
    if (!quartic.value(node).is_zero())
      fail(Errc::CertificationFailure, "candidate node " + node.str() + " is not on the quartic");
    for (const Scalar& g : quartic.gradient(node))
      if (!g.is_zero())
        fail(Errc::CertificationFailure, "quartic is smooth at candidate node " + node.str());
  }
  // rank-1 fibers at the 15 chord images
  for (size_t k = 0; k + 1 < cert.nodes.size(); ++k) {
    if (fiber_conic(cm, cert.nodes[k]).cls != FiberClass::two_torsion)
      fail(Errc::CertificationFailure, "Weierstrass chord image " + cert.nodes[k].str() + " is not a double line");
  }
  cert.all_distinct = true;
  for (size_t a = 0; a < cert.nodes.size(); ++a)
    for (size_t b = a + 1; b < cert.nodes.size(); ++b)
      if (cert.nodes[a] == cert.nodes[b]) cert.all_distinct = false;
  if (!cert.all_distinct)
    fail(Errc::CertificationFailure, "the 16 candidate nodes are not pairwise distinct");
  return cert;
}

Scalar tangent_cone_check(const QuarticSurface& quartic) {
  FieldContext ctx = quartic.coeffs()(0).context();
  const auto& monos = QuarticSurface::monomials();

  // chart p3 = 1: group by degree in (p0, p1, p2)
  std::array<std::map<std::array<int, 3>, Scalar>, 5> parts;
  for (Eigen::Index i = 0; i < 35; ++i) {
    if (quartic.coeffs()(i).is_zero()) continue;
    const auto& e = monos[static_cast<size_t>(i)];
    int deg = e[0] + e[1] + e[2];
    std::array<int, 3> key = {e[0], e[1], e[2]};
    parts[static_cast<size_t>(deg)][key] = quartic.coeffs()(i);
  }
  if (!parts[0].empty() || !parts[1].empty())
    fail(Errc::CertificationFailure, "quartic is not singular at the origin");
  if (parts[2].empty())
    fail(Errc::CertificationFailure, "tangent cone at the origin has degree > 2");

  // quadratic part must be alpha * (p1^2 - 4 p0 p2)
  auto get = [&](int a, int b, int c) {
    auto it = parts[2].find({a, b, c});
    return it == parts[2].end() ? Scalar::zero(ctx) : it->second;
  };
  Scalar alpha = get(0, 2, 0);
  if (alpha.is_zero() || get(1, 0, 1) != Scalar::make(ctx, -4) * alpha ||
      !get(2, 0, 0).is_zero() || !get(1, 1, 0).is_zero() || !get(0, 1, 1).is_zero() ||
      !get(0, 0, 2).is_zero())
    fail(Errc::CertificationFailure, "tangent cone is not proportional to p1^2 - 4 p0 p2");
  return alpha;
}

int sym_cover_count(const P2Param& c) {
  if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
    fail(Errc::ZeroParameter, "zero binary quadratic");
  Scalar disc = c[1] * c[1] - Scalar(4).in_context(c[0].context()) * c[0] * c[2];
  return disc.is_zero() ? 1 : 2;
}

DiscriminantCrosscheck discriminant_crosscheck(const ClassifyingMap& cm, const QuarticSurface& quartic,
                                               int n, std::uint64_t seed) {
  const FieldContext& ctx = cm.curve().context();
  DiscriminantCrosscheck report;

  // every rational non-origin degenerate member image lies on the quartic
  for (int i = 0; i < n; ++i) {
    SeededRng rng = SeededRng::derive(seed, "crosscheck/pencil/" + std::to_string(i));
    P2Param c = {rng.field_element(ctx), rng.field_element(ctx), rng.field_element(ctx)};
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) c[0] = Scalar::one(ctx);
    DegenerateMembers degs = degenerate_members(cm, c);
    bool origin_seen = false;
    for (const DegenerateMember& dm : degs.members) {
      if (dm.t0.is_zero()) {
        origin_seen = true;
        continue;
      }
      if (!quartic.value(dm.image).is_zero())
        fail(Errc::CertificationFailure,
             "degenerate member image " + dm.image.str() + " is off the quartic");
      ++report.degenerate_images_on_quartic;
    }
    if (!origin_seen)
      fail(Errc::CertificationFailure, "pencil lost its origin member");
    ++report.pencils_checked;
  }

  // stable points: rank 3 and off the quartic
  for (int i = 0; i < n; ++i) {
    SeededRng rng = SeededRng::derive(seed, "crosscheck/stable/" + std::to_string(i));
    for (;;) {
      P5 e = random_p4_point(ctx, rng);
      if (cm.on_curve(e) || cm.on_cone(e)) continue;
      P3Point p = cm.phi(e);
      if (quartic.value(p).is_zero()) continue;  // on the branch locus, not a stable probe
      if (fiber_conic(cm, p).cls != FiberClass::stable)
        fail(Errc::CertificationFailure, "off-quartic point " + p.str() + " has a singular fiber");
      break;
    }
    ++report.stable_points_checked;
  }

  // Kummer samples: fiber rank <= 2
  std::vector<P3Point> samples = sample_secant_images(cm, n, SeededRng::hash_label(seed, "crosscheck/kummer"));
  for (const P3Point& p : samples) {
    bool origin = p[0].is_zero() && p[1].is_zero() && p[2].is_zero();
    if (!origin && fiber_conic(cm, p).cls == FiberClass::stable)
      fail(Errc::CertificationFailure, "secant image " + p.str() + " has a smooth fiber");
    if (!quartic.value(p).is_zero())
      fail(Errc::CertificationFailure, "secant image " + p.str() + " is off the quartic");
    ++report.kummer_samples_checked;
  }

  report.passed = true;
  return report;
}

}  // namespace g2cb
