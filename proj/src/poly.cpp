#include "g2cb/poly.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace g2cb {

int var_index(std::string_view name) {
  for (int i = 0; i < kNumVars; ++i)
    if (name == kVarNames[static_cast<size_t>(i)]) return i;
  fail(Errc::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

bool GradedLexGreater::operator()(const Expo& a, const Expo& b) const {
  int da = 0, db = 0;
  for (int i = 0; i < kNumVars; ++i) {
    da += a[static_cast<size_t>(i)];
    db += b[static_cast<size_t>(i)];
  }
  if (da != db) return da > db;
  return a > b;  // lexicographic on the declared variable order
}

MultiPoly MultiPoly::constant(const Scalar& c) {
  MultiPoly p(c.context().is_specified() ? c.context() : FieldContext::rationals());
  p.add_term(Expo{}, c);
  return p;
}

MultiPoly MultiPoly::variable(int var, const FieldContext& ctx) {
  MultiPoly p(ctx);
  p.add_term(unit_expo(var), Scalar::one(ctx));
  return p;
}

MultiPoly MultiPoly::monomial(const Scalar& c, const Expo& e) {
  MultiPoly p(c.context().is_specified() ? c.context() : FieldContext::rationals());
  p.add_term(e, c);
  return p;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int i = 0; i < kNumVars; ++i) d += e[static_cast<size_t>(i)];
    if (d > best) best = d;
  }
  return best;
}

int MultiPoly::degree_in(int var) const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[static_cast<size_t>(var)]));
  return terms_.empty() ? -1 : best;
}

std::vector<int> MultiPoly::variables() const {
  std::array<bool, kNumVars> used{};
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < kNumVars; ++i)
      if (e[static_cast<size_t>(i)] > 0) used[static_cast<size_t>(i)] = true;
  std::vector<int> out;
  for (int i = 0; i < kNumVars; ++i)
    if (used[static_cast<size_t>(i)]) out.push_back(i);
  return out;
}

std::optional<int> MultiPoly::sole_variable() const {
  std::vector<int> vs = variables();
  if (vs.size() == 1) return vs[0];
  return std::nullopt;
}

Scalar MultiPoly::coefficient(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(ctx_) : it->second;
}

void MultiPoly::add_term(const Expo& e, const Scalar& c) {
  ctx_ = unify(ctx_, c.context());
  Scalar cc = c.in_context(ctx_);
  if (cc.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, cc);
  if (!inserted) {
    it->second += cc;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(ctx_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  ctx_ = unify(ctx_, o.ctx_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  FieldContext ctx = unify(ctx_, o.ctx_);
  MultiPoly out(ctx);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Expo e;
      for (int i = 0; i < kNumVars; ++i)
        e[static_cast<size_t>(i)] = static_cast<std::uint16_t>(ea[static_cast<size_t>(i)] + eb[static_cast<size_t>(i)]);
      out.add_term(e, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  FieldContext ctx = unify(ctx_, c.context());
  MultiPoly out(ctx);
  Scalar cc = c.in_context(ctx);
  if (!cc.is_zero())
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff.in_context(ctx) * cc);
  *this = std::move(out);
  return *this;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) fail(Errc::InvalidInput, "negative polynomial power");
  MultiPoly r = constant(Scalar::one(ctx_));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  MultiPoly d = *this;
  d -= o;
  return d.is_zero();
}

Scalar MultiPoly::eval(const std::map<int, Scalar>& point) const {
  Scalar acc = Scalar::zero(ctx_);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (int i = 0; i < kNumVars; ++i) {
      std::uint16_t exp = e[static_cast<size_t>(i)];
      if (exp == 0) continue;
      auto it = point.find(i);
      if (it == point.end())
        fail(Errc::InvalidInput, std::string("no value for variable '") + kVarNames[static_cast<size_t>(i)] + "'");
      term *= it->second.in_context(ctx_).pow(exp);
    }
    acc += term;
  }
  return acc;
}

Scalar MultiPoly::eval_univariate(const Scalar& value) const {
  std::optional<int> v = sole_variable();
  if (!v) {
    if (variables().empty()) return coefficient(Expo{});
    fail(Errc::InvalidInput, "eval_univariate on a multivariate polynomial");
  }
  // Horner on the dense form
  std::vector<Scalar> cs = dense_coeffs(*v);
  Scalar acc = Scalar::zero(ctx_);
  Scalar xv = value.in_context(ctx_);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * xv + *it;
  return acc;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& replacement) const {
  FieldContext ctx = unify(ctx_, replacement.context());
  MultiPoly out(ctx);
  // memoized powers of the replacement
  std::vector<MultiPoly> powers = {MultiPoly::constant(Scalar::one(ctx))};
  for (const auto& [e, c] : terms_) {
    std::uint16_t exp = e[static_cast<size_t>(var)];
    while (powers.size() <= exp) powers.push_back(powers.back() * replacement);
    Expo rest = e;
    rest[static_cast<size_t>(var)] = 0;
    out += MultiPoly::monomial(c, rest) * powers[exp];
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly out(ctx_);
  for (const auto& [e, c] : terms_) {
    std::uint16_t exp = e[static_cast<size_t>(var)];
    if (exp == 0) continue;
    Expo d = e;
    d[static_cast<size_t>(var)] = static_cast<std::uint16_t>(exp - 1);
    out.add_term(d, c * Scalar(static_cast<long>(exp)).in_context(ctx_));
  }
  return out;
}

std::vector<Scalar> MultiPoly::dense_coeffs(int var) const {
  int deg = degree_in(var);
  std::vector<Scalar> cs(static_cast<size_t>(std::max(deg, 0)) + 1, Scalar::zero(ctx_));
  for (const auto& [e, c] : terms_) {
    Expo rest = e;
    std::uint16_t exp = rest[static_cast<size_t>(var)];
    rest[static_cast<size_t>(var)] = 0;
    if (rest != Expo{})
      fail(Errc::InvalidInput, "dense_coeffs: polynomial involves other variables");
    cs[exp] = c;
  }
  return cs;
}

MultiPoly MultiPoly::from_dense(const std::vector<Scalar>& coeffs, int var, const FieldContext& ctx) {
  MultiPoly p(ctx);
  for (size_t i = 0; i < coeffs.size(); ++i)
    p.add_term(unit_expo(var, static_cast<std::uint16_t>(i)), coeffs[i]);
  return p;
}

// ---------------------------------------------------------------------------
// printing

namespace {

// magnitude/sign split so rationals print as "a/b" after a binary minus
std::pair<bool, std::string> coeff_repr(const Scalar& c) {
  if (c.context().kind() == FieldKind::Prime) return {false, c.str()};
  const mpq_class& q = c.rational();
  if (q < 0) {
    mpq_class m = -q;
    return {true, m.get_str()};
  }
  return {false, q.get_str()};
}

std::string monomial_repr(const Expo& e) {
  std::string out;
  for (int i = 0; i < kNumVars; ++i) {
    std::uint16_t exp = e[static_cast<size_t>(i)];
    if (exp == 0) continue;
    if (!out.empty()) out += "*";
    out += kVarNames[static_cast<size_t>(i)];
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

}  // namespace

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    auto [neg, mag] = coeff_repr(c);
    std::string mono = monomial_repr(e);
    std::string body = mono.empty() ? mag : (mag == "1" ? mono : mag + "*" + mono);
    if (first) {
      out += neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " + body : " + " + body;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// parsing: expr := term {(+|-) term}; term := factor {'*' factor};
// factor := base ['^' nat]; base := number | var | '(' expr ')' | '-' factor

namespace {

class Parser {
 public:
  Parser(const std::string& text, const FieldContext& ctx) : s_(text), ctx_(ctx) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip_ws();
    if (i_ != s_.size()) err("unexpected trailing input");
    // parse of "0" etc. must still carry the requested context
    if (p.is_zero()) return MultiPoly(ctx_);
    return p;
  }

 private:
  [[noreturn]] void err(const std::string& msg) {
    fail(Errc::SyntaxError, msg + " at position " + std::to_string(i_));
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base_p = base();
    if (eat('^')) {
      skip_ws();
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) err("expected exponent");
      int e = std::stoi(s_.substr(start, i_ - start));
      if (e > 64) err("exponent too large");
      return base_p.pow(e);
    }
    return base_p;
  }

  MultiPoly base() {
    skip_ws();
    if (i_ >= s_.size()) err("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      MultiPoly p = expr();
      if (!eat(')')) err("expected ')'");
      return p;
    }
    if (c == '-') {
      ++i_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    err(std::string("unexpected character '") + c + "'");
  }

  MultiPoly number() {
    std::string digits = read_digits();
    // "a/b" literal: '/' only occurs inside a numeric literal
    size_t save = i_;
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      skip_ws();
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        digits += "/" + read_digits();
      } else {
        err("expected denominator digits");
      }
    } else {
      i_ = save;
    }
    return MultiPoly::constant(Scalar::parse(digits, ctx_));
  }

  std::string read_digits() {
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  MultiPoly variable() {
    size_t start = i_;
    ++i_;
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string name = s_.substr(start, i_ - start);
    int v;
    try {
      v = var_index(name);
    } catch (const Error&) {
      i_ = start;
      fail(Errc::UnknownVariable,
           "unknown variable '" + name + "' at position " + std::to_string(start));
    }
    return MultiPoly::variable(v, ctx_);
  }

  std::string s_;
  FieldContext ctx_;
  size_t i_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, const FieldContext& ctx) {
  return Parser(text, ctx).run();
}

}  // namespace g2cb
