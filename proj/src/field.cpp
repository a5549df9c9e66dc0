#include "g2cb/field.hpp"

#include <ostream>

namespace g2cb {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotSmooth: return "NotSmooth";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::BadCharacteristic: return "BadCharacteristic";
    case Errc::SqrtNotInField: return "SqrtNotInField";
    case Errc::Exhausted: return "Exhausted";
    case Errc::BaseLocus: return "BaseLocus";
    case Errc::IndeterminateImage: return "IndeterminateImage";
    case Errc::CertificationFailure: return "CertificationFailure";
    case Errc::OriginProjection: return "OriginProjection";
    case Errc::ZeroParameter: return "ZeroParameter";
    case Errc::OriginFiber: return "OriginFiber";
    case Errc::AmbiguousQuartic: return "AmbiguousQuartic";
    case Errc::NoQuartic: return "NoQuartic";
    case Errc::CubicVanishes: return "CubicVanishes";
    case Errc::SkippedUnsplit: return "SkippedUnsplit";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit accumulators
  if (a % p == 0) fail(Errc::InvalidInput, "division by zero in F_" + std::to_string(p));
  __int128 t = 0, newt = 1;
  __int128 r = p, newr = a % p;
  while (newr != 0) {
    __int128 q = r / newr;
    __int128 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin base set for 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  std::uint64_t l = powmod(a, (p - 1) / 2, p);
  return l == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (legendre(a, p) != 1) return std::nullopt;
  if (p % 4 == 3) {
    std::uint64_t r = powmod(a, (p + 1) / 4, p);
    return std::min(r, p - r);
  }
  // Tonelli-Shanks, smallest non-residue as generator
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre(z, p) != -1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
      if (i == m) return std::nullopt;  // unreachable for residues
    }
    std::uint64_t b = powmod(c, std::uint64_t(1) << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

FieldContext FieldContext::prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    fail(Errc::InvalidInput, "field modulus must be an odd prime, got " + std::to_string(p));
  return FieldContext(FieldKind::Prime, p);
}

std::string FieldContext::str() const {
  switch (kind_) {
    case FieldKind::Integer: return "Z";
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "F_" + std::to_string(p_);
  }
  return "?";
}

FieldContext unify(const FieldContext& a, const FieldContext& b) {
  if (!a.is_specified()) return b;
  if (!b.is_specified()) return a;
  if (a == b) return a;
  fail(Errc::ContextMismatch, "cannot mix " + a.str() + " with " + b.str());
}

namespace {

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Scalar Scalar::make(const FieldContext& ctx, const mpz_class& v) {
  Scalar s;
  s.ctx_ = ctx;
  switch (ctx.kind()) {
    case FieldKind::Integer:
    case FieldKind::Rationals:
      s.rat_ = mpq_class(v);
      break;
    case FieldKind::Prime:
      s.rat_ = 0;
      s.res_ = reduce_mpz(v, ctx.modulus());
      break;
  }
  return s;
}

Scalar Scalar::make(const FieldContext& ctx, const mpq_class& v) {
  Scalar s;
  s.ctx_ = ctx;
  switch (ctx.kind()) {
    case FieldKind::Integer:
    case FieldKind::Rationals: {
      mpq_class q = v;
      q.canonicalize();
      s.rat_ = q;
      break;
    }
    case FieldKind::Prime: {
      std::uint64_t p = ctx.modulus();
      std::uint64_t num = reduce_mpz(mpz_class(v.get_num()), p);
      std::uint64_t den = reduce_mpz(mpz_class(v.get_den()), p);
      s.res_ = mulmod(num, invmod(den, p), p);
      break;
    }
  }
  return s;
}

Scalar Scalar::parse(const std::string& text, const FieldContext& ctx) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    fail(Errc::SyntaxError, "bad numeric literal '" + text + "'");
  q.canonicalize();
  return make(ctx, q);
}

Scalar Scalar::in_context(const FieldContext& ctx) const {
  FieldContext target = unify(ctx_, ctx);
  if (target == ctx_) {
    Scalar s = *this;
    s.ctx_ = target;
    return s;
  }
  // Integer literal landing in a field
  return make(target, rat_);
}

bool Scalar::is_zero() const {
  return ctx_.kind() == FieldKind::Prime ? res_ == 0 : rat_ == 0;
}

bool Scalar::is_one() const {
  return ctx_.kind() == FieldKind::Prime ? res_ == 1 : rat_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (ctx_.kind() == FieldKind::Prime) {
    s.res_ = res_ == 0 ? 0 : ctx_.modulus() - res_;
  } else {
    s.rat_ = -rat_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  FieldContext ctx = unify(ctx_, o.ctx_);
  Scalar a = in_context(ctx), b = o.in_context(ctx);
  if (ctx.kind() == FieldKind::Prime) {
    std::uint64_t p = ctx.modulus();
    std::uint64_t r = a.res_ + b.res_;
    if (r >= p) r -= p;
    a.res_ = r;
  } else {
    a.rat_ += b.rat_;
  }
  *this = a;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  FieldContext ctx = unify(ctx_, o.ctx_);
  Scalar a = in_context(ctx), b = o.in_context(ctx);
  if (ctx.kind() == FieldKind::Prime) {
    a.res_ = mulmod(a.res_, b.res_, ctx.modulus());
  } else {
    a.rat_ *= b.rat_;
  }
  *this = a;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  FieldContext ctx = unify(ctx_, o.ctx_);
  if (!ctx.is_specified()) ctx = FieldContext::rationals();  // integer/integer lives in Q
  Scalar a = in_context(ctx), b = o.in_context(ctx);
  if (b.is_zero()) fail(Errc::InvalidInput, "division by zero");
  if (ctx.kind() == FieldKind::Prime) {
    a.res_ = mulmod(a.res_, invmod(b.res_, ctx.modulus()), ctx.modulus());
  } else {
    a.rat_ /= b.rat_;
  }
  *this = a;
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  FieldContext ctx = unify(ctx_, o.ctx_);
  Scalar a = in_context(ctx), b = o.in_context(ctx);
  return ctx.kind() == FieldKind::Prime ? a.res_ == b.res_ : a.rat_ == b.rat_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::InvalidInput, "zero has no inverse");
  if (ctx_.kind() == FieldKind::Prime) {
    Scalar s = *this;
    s.res_ = invmod(res_, ctx_.modulus());
    return s;
  }
  Scalar s = *this;
  if (!s.ctx_.is_specified()) s.ctx_ = FieldContext::rationals();
  s.rat_ = 1 / rat_;
  return s;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = Scalar(1).in_context(ctx_);
  Scalar base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

bool Scalar::is_square() const {
  if (ctx_.kind() == FieldKind::Prime) return legendre(res_, ctx_.modulus()) >= 0;
  if (rat_ < 0) return false;
  mpz_class n = rat_.get_num(), d = rat_.get_den();
  return mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
}

Scalar Scalar::sqrt() const {
  if (ctx_.kind() == FieldKind::Prime) {
    auto r = sqrt_mod(res_, ctx_.modulus());
    if (!r) fail(Errc::SqrtNotInField, str() + " is a non-residue mod " + std::to_string(ctx_.modulus()));
    Scalar s = *this;
    s.res_ = *r;
    return s;
  }
  if (!is_square()) fail(Errc::SqrtNotInField, str() + " has no rational square root");
  mpz_class n = rat_.get_num(), d = rat_.get_den(), rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Scalar s = *this;
  s.rat_ = mpq_class(rn) / mpq_class(rd);
  return s;
}

const mpq_class& Scalar::rational() const {
  if (ctx_.kind() == FieldKind::Prime) fail(Errc::InvalidInput, "rational() on a prime-field scalar");
  return rat_;
}

std::uint64_t Scalar::residue() const {
  if (ctx_.kind() != FieldKind::Prime) fail(Errc::InvalidInput, "residue() on a non-prime scalar");
  return res_;
}

std::string Scalar::str() const {
  if (ctx_.kind() == FieldKind::Prime) return std::to_string(res_);
  return rat_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace g2cb
