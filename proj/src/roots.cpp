#include "g2cb/roots.hpp"

#include <algorithm>

#include "g2cb/rng.hpp"

namespace g2cb {

namespace {

// ---- dense univariate helpers over an arbitrary field ----------------------

void trim(std::vector<Scalar>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

int deg(const std::vector<Scalar>& v) { return static_cast<int>(v.size()) - 1; }

std::vector<Scalar> divrem(std::vector<Scalar> num, const std::vector<Scalar>& den,
                           std::vector<Scalar>* quotient_out = nullptr) {
  std::vector<Scalar> q(num.size(), Scalar::zero(den.back().context()));
  Scalar lead_inv = den.back().inverse();
  while (deg(num) >= deg(den) && !num.empty()) {
    int shift = deg(num) - deg(den);
    Scalar c = num.back() * lead_inv;
    q[static_cast<size_t>(shift)] = c;
    for (int i = 0; i <= deg(den); ++i)
      num[static_cast<size_t>(i + shift)] -= c * den[static_cast<size_t>(i)];
    trim(num);
  }
  if (quotient_out) {
    trim(q);
    *quotient_out = std::move(q);
  }
  return num;
}

std::vector<Scalar> gcd_dense(std::vector<Scalar> a, std::vector<Scalar> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::vector<Scalar> r = divrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

// ---- prime-field dense kernels (residue vectors) ---------------------------

using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

std::uint64_t fp_eval(const FpPoly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

FpPoly fp_rem(FpPoly num, const FpPoly& den, std::uint64_t p) {
  std::uint64_t lead_inv = invmod(den.back(), p);
  while (num.size() >= den.size() && !num.empty()) {
    size_t shift = num.size() - den.size();
    std::uint64_t c = mulmod(num.back(), lead_inv, p);
    for (size_t i = 0; i < den.size(); ++i) {
      std::uint64_t sub = mulmod(c, den[i], p);
      std::uint64_t& slot = num[i + shift];
      slot = (slot + p - sub) % p;
    }
    fp_trim(num);
  }
  return num;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint64_t p) {
  FpPoly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
  fp_trim(prod);
  if (prod.empty()) return prod;
  return fp_rem(std::move(prod), mod, p);
}

FpPoly fp_powmod(FpPoly base, mpz_class e, const FpPoly& mod, std::uint64_t p) {
  FpPoly r = {1};
  base = fp_rem(std::move(base), mod, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, base, mod, p);
    base = fp_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

FpPoly fp_quotient(const FpPoly& num_in, const FpPoly& den, std::uint64_t p) {
  FpPoly num = num_in;
  FpPoly quot(num.size() - den.size() + 1, 0);
  std::uint64_t lead_inv = invmod(den.back(), p);
  while (num.size() >= den.size() && !num.empty()) {
    size_t shift = num.size() - den.size();
    std::uint64_t c = mulmod(num.back(), lead_inv, p);
    quot[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) {
      std::uint64_t sub = mulmod(c, den[i], p);
      std::uint64_t& slot = num[i + shift];
      slot = (slot + p - sub) % p;
    }
    fp_trim(num);
  }
  fp_trim(quot);
  return quot;
}

// Cantor-Zassenhaus on a monic squarefree product of linear factors.
void fp_split_linear(const FpPoly& g, std::uint64_t p, SeededRng& rng, std::vector<std::uint64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    // x + c -> root -c
    std::uint64_t c = mulmod(g[0], invmod(g[1], p), p);
    out.push_back((p - c) % p);
    return;
  }
  for (;;) {
    std::uint64_t a = rng.below(p);
    // (x + a)^((p-1)/2) - 1 mod g
    FpPoly h = fp_powmod({a, 1}, mpz_class((p - 1) / 2), g, p);
    if (h.empty())
      h = {p - 1};
    else
      h[0] = (h[0] + p - 1) % p;
    fp_trim(h);
    if (h.empty()) continue;
    FpPoly d = fp_gcd(g, h, p);
    if (d.size() > 1 && d.size() < g.size()) {
      fp_split_linear(d, p, rng, out);
      fp_split_linear(fp_quotient(g, d, p), p, rng, out);
      return;
    }
  }
}

std::vector<std::uint64_t> fp_root_scan(const FpPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < p; ++x)
    if (fp_eval(f, x, p) == 0) roots.push_back(x);
  return roots;
}

std::vector<std::uint64_t> fp_roots_large(const FpPoly& f, std::uint64_t p) {
  // g = gcd(f, x^p - x): the product of the distinct linear factors
  FpPoly xp = fp_powmod({0, 1}, mpz_class(p), f, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] + p - 1) % p;
  fp_trim(xp);
  FpPoly g = fp_gcd(f, xp, p);
  std::uint64_t h = 0;
  for (std::uint64_t c : f) h = h * 1099511628211ull + c + 1;
  SeededRng rng = SeededRng::derive(h ^ p, "equal_degree_split");
  std::vector<std::uint64_t> roots;
  fp_split_linear(g, p, rng, roots);
  return roots;
}

// ---- rational-root search ---------------------------------------------------

std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  if (n == 0) fail(Errc::InvalidInput, "divisors of zero requested");
  std::vector<std::pair<mpz_class, int>> factors;
  for (unsigned long q = 2; q <= 1000000ul && mpz_class(q) * q <= n; q = (q == 2 ? 3 : q + 2)) {
    if (n % q == 0) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      factors.emplace_back(q, e);
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
      fail(Errc::InvalidInput, "coefficient too large to factor for rational-root search");
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs = {1};
  for (const auto& [q, e] : factors) {
    size_t base = divs.size();
    mpz_class power = 1;
    for (int i = 1; i <= e; ++i) {
      power *= q;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
    }
  }
  return divs;
}

RootReport rational_roots(const std::vector<Scalar>& coeffs, const FieldContext& ctx) {
  // primitive integer model
  mpz_class denom_lcm = 1;
  for (const Scalar& c : coeffs) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
  std::vector<mpz_class> zc;
  for (const Scalar& c : coeffs) zc.push_back(mpz_class(c.rational() * denom_lcm));
  mpz_class content = 0;
  for (const mpz_class& c : zc) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (mpz_class& c : zc) c /= content;

  RootReport report;
  std::vector<Scalar> work = coeffs;

  // roots at zero
  size_t k = 0;
  while (k < zc.size() && zc[k] == 0) ++k;
  if (k > 0) {
    report.roots.emplace_back(Scalar::zero(ctx), static_cast<int>(k));
    zc.erase(zc.begin(), zc.begin() + static_cast<long>(k));
    work.erase(work.begin(), work.begin() + static_cast<long>(k));
  }
  if (zc.size() <= 1) {
    report.residual_degree = 0;
    return report;
  }

  std::vector<mpz_class> nums = divisors_of(zc.front());
  std::vector<mpz_class> dens = divisors_of(zc.back());
  std::vector<Scalar> candidates;
  for (const mpz_class& n : nums)
    for (const mpz_class& d : dens) {
      mpq_class q(n, d);
      q.canonicalize();
      candidates.push_back(Scalar::make(ctx, q));
      candidates.push_back(Scalar::make(ctx, mpq_class(-q)));
    }
  std::sort(candidates.begin(), candidates.end(),
            [](const Scalar& a, const Scalar& b) { return a.rational() < b.rational(); });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const Scalar& cand : candidates) {
    // Horner
    Scalar acc = Scalar::zero(ctx);
    for (auto it = work.rbegin(); it != work.rend(); ++it) acc = acc * cand + *it;
    if (!acc.is_zero()) continue;
    int mult = 0;
    for (;;) {
      // synthetic division by (x - cand)
      std::vector<Scalar> quot(work.size() - 1, Scalar::zero(ctx));
      Scalar carry = Scalar::zero(ctx);
      for (size_t i = work.size(); i-- > 1;) {
        carry = work[i] + carry * cand;
        quot[i - 1] = carry;
      }
      Scalar rem = work[0] + carry * cand;
      if (!rem.is_zero()) break;
      work = quot;
      ++mult;
      if (work.size() <= 1) break;
    }
    report.roots.emplace_back(cand, mult);
    if (work.size() <= 1) break;
  }
  report.residual_degree = static_cast<int>(work.size()) - 1;
  std::sort(report.roots.begin(), report.roots.end(), [](const auto& a, const auto& b) {
    return a.first.rational() < b.first.rational();
  });
  return report;
}

}  // namespace

RootReport univariate_roots(const MultiPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "roots of the zero polynomial");
  std::optional<int> var = p.sole_variable();
  if (!var) {
    if (p.variables().empty()) return RootReport{};  // nonzero constant
    fail(Errc::InvalidInput, "univariate_roots needs a univariate polynomial");
  }
  FieldContext ctx = p.context();
  std::vector<Scalar> coeffs = p.dense_coeffs(*var);

  if (ctx.kind() == FieldKind::Prime) {
    std::uint64_t pm = ctx.modulus();
    FpPoly f;
    for (const Scalar& c : coeffs) f.push_back(c.residue());
    fp_trim(f);
    std::vector<std::uint64_t> roots =
        pm <= 1000000 ? fp_root_scan(f, pm) : fp_roots_large(f, pm);
    std::sort(roots.begin(), roots.end());
    RootReport report;
    int total_mult = 0;
    for (std::uint64_t r : roots) {
      // multiplicity via repeated division by (x - r)
      FpPoly work = f;
      int mult = 0;
      for (;;) {
        FpPoly quot(work.size() - 1, 0);
        std::uint64_t carry = 0;
        for (size_t i = work.size(); i-- > 1;) {
          carry = (mulmod(carry, r, pm) + work[i]) % pm;
          quot[i - 1] = carry;
        }
        std::uint64_t rem = (mulmod(carry, r, pm) + work[0]) % pm;
        if (rem != 0) break;
        work = quot;
        ++mult;
        if (work.size() <= 1) break;
      }
      report.roots.emplace_back(Scalar::make(ctx, mpz_class(static_cast<unsigned long>(r))), mult);
      total_mult += mult;
    }
    report.residual_degree = static_cast<int>(f.size()) - 1 - total_mult;
    return report;
  }
  return rational_roots(coeffs, FieldContext::rationals());
}

MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b) {
  FieldContext ctx = unify(a.context(), b.context());
  int var;
  if (auto va = a.sole_variable())
    var = *va;
  else if (auto vb = b.sole_variable())
    var = *vb;
  else if (a.variables().empty() && b.variables().empty())
    var = 0;
  else
    fail(Errc::InvalidInput, "univariate_gcd needs univariate inputs");
  std::vector<Scalar> da = a.is_zero() ? std::vector<Scalar>{} : a.dense_coeffs(var);
  std::vector<Scalar> db = b.is_zero() ? std::vector<Scalar>{} : b.dense_coeffs(var);
  for (auto& c : da) c = c.in_context(ctx);
  for (auto& c : db) c = c.in_context(ctx);
  std::vector<Scalar> g = gcd_dense(da, db);
  return MultiPoly::from_dense(g, var, ctx);
}

bool squarefree_check(const MultiPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "squarefree_check of the zero polynomial");
  std::optional<int> var = p.sole_variable();
  if (!var) {
    if (p.variables().empty()) return true;
    fail(Errc::InvalidInput, "squarefree_check needs a univariate polynomial");
  }
  MultiPoly g = univariate_gcd(p, p.derivative(*var));
  return g.total_degree() == 0;
}

}  // namespace g2cb
