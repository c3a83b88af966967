#include "sgv/poly.hpp"

#include <algorithm>
#include <sstream>

namespace sgv {

int Degree::value() const {
  if (is_minus_infinity()) fail(ErrorKind::Internal, "degree of the zero polynomial has no integer value");
  return v_;
}

std::string Degree::to_string() const { return is_minus_infinity() ? "-inf" : std::to_string(v_); }

void check_same_ctx(const FieldPtr& a, const FieldPtr& b) {
  if (a->fingerprint() != b->fingerprint()) fail(ErrorKind::CtxMismatch, "operands belong to different fields");
}

namespace {

std::string coeff_text(const FieldCtx& k, const FieldElem& c) {
  std::string s = k.to_string(c);
  if (!k.is_prime_field() && s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

UniPoly::UniPoly(FieldPtr ctx) : ctx_(std::move(ctx)) {}

UniPoly::UniPoly(FieldPtr ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (const auto& c : c_) ctx_->check(c);
  strip();
}

UniPoly UniPoly::from_ints(FieldPtr ctx, const std::vector<std::int64_t>& ascending) {
  std::vector<FieldElem> c;
  c.reserve(ascending.size());
  for (auto v : ascending) c.push_back(ctx->from_int(v));
  return UniPoly(std::move(ctx), std::move(c));
}

UniPoly UniPoly::constant(FieldPtr ctx, const FieldElem& c) { return UniPoly(std::move(ctx), {c}); }

UniPoly UniPoly::monomial(FieldPtr ctx, const FieldElem& c, std::size_t n) {
  std::vector<FieldElem> v(n + 1, ctx->zero());
  v[n] = c;
  return UniPoly(std::move(ctx), std::move(v));
}

UniPoly UniPoly::x(FieldPtr ctx) {
  auto one = ctx->one();
  return monomial(std::move(ctx), one, 1);
}

void UniPoly::strip() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Degree UniPoly::degree() const noexcept {
  return c_.empty() ? Degree::minus_infinity() : Degree(static_cast<int>(c_.size()) - 1);
}

bool UniPoly::is_one() const { return c_.size() == 1 && c_[0] == ctx_->one(); }

FieldElem UniPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ctx_->zero(); }

FieldElem UniPoly::lead() const { return c_.empty() ? ctx_->zero() : c_.back(); }

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  return scale(ctx_->inv(c_.back()));
}

UniPoly UniPoly::scale(const FieldElem& c) const {
  std::vector<FieldElem> out;
  out.reserve(c_.size());
  for (const auto& v : c_) out.push_back(ctx_->mul(v, c));
  return UniPoly(ctx_, std::move(out));
}

UniPoly UniPoly::shift(std::size_t n) const {
  if (c_.empty()) return *this;
  std::vector<FieldElem> out(n, ctx_->zero());
  out.insert(out.end(), c_.begin(), c_.end());
  return UniPoly(ctx_, std::move(out));
}

UniPoly UniPoly::derivative() const {
  std::vector<FieldElem> out;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    out.push_back(ctx_->mul(c_[i], ctx_->from_int(static_cast<std::int64_t>(i % ctx_->characteristic()))));
  }
  return UniPoly(ctx_, std::move(out));
}

UniPoly UniPoly::pow(std::uint64_t n) const {
  UniPoly r = constant(ctx_, ctx_->one());
  UniPoly b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

UniPoly UniPoly::compose(const UniPoly& g) const {
  check_same_ctx(ctx_, g.ctx_);
  UniPoly r(ctx_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(ctx_, c_[i]);
  return r;
}

FieldElem UniPoly::eval(const FieldElem& x) const {
  ctx_->check(x);
  FieldElem r = ctx_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) r = ctx_->add(ctx_->mul(r, x), c_[i]);
  return r;
}

UniPoly UniPoly::map(FieldPtr target, const std::function<FieldElem(const FieldElem&)>& f) const {
  std::vector<FieldElem> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(f(c));
  return UniPoly(std::move(target), std::move(out));
}

std::string UniPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << '+';
    first = false;
    const bool unit = c_[i] == ctx_->one();
    if (i == 0) {
      os << coeff_text(*ctx_, c_[i]);
      continue;
    }
    if (!unit) os << coeff_text(*ctx_, c_[i]) << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  check_same_ctx(a.ctx_, b.ctx_);
  const auto& k = *a.ctx_;
  std::vector<FieldElem> out(std::max(a.c_.size(), b.c_.size()), k.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = k.add(out[i], b.c_[i]);
  return UniPoly(a.ctx_, std::move(out));
}

UniPoly operator-(const UniPoly& a) {
  std::vector<FieldElem> out;
  out.reserve(a.c_.size());
  for (const auto& c : a.c_) out.push_back(a.ctx_->neg(c));
  return UniPoly(a.ctx_, std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  check_same_ctx(a.ctx_, b.ctx_);
  if (a.c_.empty() || b.c_.empty()) return UniPoly(a.ctx_);
  const auto& k = *a.ctx_;
  std::vector<FieldElem> out(a.c_.size() + b.c_.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a.c_[i], b.c_[j]));
  }
  return UniPoly(a.ctx_, std::move(out));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  return a.ctx_->fingerprint() == b.ctx_->fingerprint() && a.c_ == b.c_;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  check_same_ctx(a.ctx(), b.ctx());
  if (b.is_zero()) fail(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  const auto& k = a.field();
  if (a.size() < b.size()) return {UniPoly(a.ctx()), a};
  std::vector<FieldElem> rem = a.coeffs();
  std::vector<FieldElem> q(a.size() - b.size() + 1, k.zero());
  const FieldElem inv_lead = k.inv(b.lead());
  const auto& bc = b.coeffs();
  for (std::size_t s = q.size(); s-- > 0;) {
    const FieldElem c = k.mul(rem[s + bc.size() - 1], inv_lead);
    q[s] = c;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < bc.size(); ++i) rem[s + i] = k.sub(rem[s + i], k.mul(c, bc[i]));
  }
  rem.resize(bc.size() - 1, k.zero());
  return {UniPoly(a.ctx(), std::move(q)), UniPoly(a.ctx(), std::move(rem))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
  check_same_ctx(a.ctx(), b.ctx());
  if (a.is_zero() && b.is_zero()) fail(ErrorKind::BothZero, "gcd(0, 0) is undefined");
  UniPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    UniPoly r = r0 % r1;
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return r0.monic();
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  check_same_ctx(a.ctx(), b.ctx());
  if (a.is_zero() && b.is_zero()) fail(ErrorKind::BothZero, "gcd(0, 0) is undefined");
  const auto& ctx = a.ctx();
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(ctx, ctx->one()), s1(ctx);
  UniPoly t0(ctx), t1 = UniPoly::constant(ctx, ctx->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1;
    UniPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const FieldElem inv = ctx->inv(r0.lead());
  return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

UniPoly powmod(const UniPoly& base, const BigInt& e, const UniPoly& m) {
  const auto& ctx = base.ctx();
  UniPoly r = UniPoly::constant(ctx, ctx->one()) % m;
  if (e == 0) return r;
  UniPoly b = base % m;
  for (std::size_t bit = boost::multiprecision::msb(e) + 1; bit-- > 0;) {
    r = mulmod(r, r, m);
    if (boost::multiprecision::bit_test(e, bit)) r = mulmod(r, b, m);
  }
  return r;
}

bool lex_less(const UniPoly& a, const UniPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a.coeffs()[i] == b.coeffs()[i]) continue;
    return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

BiPoly::BiPoly(FieldPtr ctx) : ctx_(std::move(ctx)) {}

BiPoly::BiPoly(FieldPtr ctx, Terms terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    ctx_->check(it->second);
    if (it->first.first < 0 || it->first.second < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  refresh();
}

void BiPoly::refresh() {
  deg_x_ = deg_y_ = total_ = Degree::minus_infinity();
  for (const auto& [e, c] : terms_) {
    deg_x_ = max(deg_x_, Degree(e.first));
    deg_y_ = max(deg_y_, Degree(e.second));
    total_ = max(total_, Degree(e.first + e.second));
  }
}

BiPoly BiPoly::from_x(const UniPoly& f) {
  Terms t;
  for (std::size_t i = 0; i < f.size(); ++i) t.emplace(Exponent{static_cast<int>(i), 0}, f.coeffs()[i]);
  return BiPoly(f.ctx(), std::move(t));
}

BiPoly BiPoly::from_y(const UniPoly& f) {
  Terms t;
  for (std::size_t j = 0; j < f.size(); ++j) t.emplace(Exponent{0, static_cast<int>(j)}, f.coeffs()[j]);
  return BiPoly(f.ctx(), std::move(t));
}

BiPoly BiPoly::constant(FieldPtr ctx, const FieldElem& c) {
  Terms t;
  t.emplace(Exponent{0, 0}, c);
  return BiPoly(std::move(ctx), std::move(t));
}

BiPoly BiPoly::from_coeffs_in_y(FieldPtr ctx, const std::vector<UniPoly>& coeffs) {
  Terms t;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    check_same_ctx(ctx, coeffs[j].ctx());
    for (std::size_t i = 0; i < coeffs[j].size(); ++i) {
      t.emplace(Exponent{static_cast<int>(i), static_cast<int>(j)}, coeffs[j].coeffs()[i]);
    }
  }
  return BiPoly(std::move(ctx), std::move(t));
}

BiPoly BiPoly::from_coeffs_in_x(FieldPtr ctx, const std::vector<UniPoly>& coeffs) {
  return from_coeffs_in_y(std::move(ctx), coeffs).swap_xy();
}

bool BiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

FieldElem BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? ctx_->zero() : it->second;
}

std::vector<UniPoly> BiPoly::coeffs_in_y() const {
  if (terms_.empty()) return {};
  const auto ny = static_cast<std::size_t>(deg_y_.value()) + 1;
  const auto nx = static_cast<std::size_t>(deg_x_.value()) + 1;
  std::vector<std::vector<FieldElem>> raw(ny, std::vector<FieldElem>(nx, ctx_->zero()));
  for (const auto& [e, c] : terms_) raw[static_cast<std::size_t>(e.second)][static_cast<std::size_t>(e.first)] = c;
  std::vector<UniPoly> out;
  out.reserve(ny);
  for (auto& r : raw) out.emplace_back(ctx_, std::move(r));
  return out;
}

std::vector<UniPoly> BiPoly::coeffs_in_x() const { return swap_xy().coeffs_in_y(); }

FieldElem BiPoly::leading_coeff() const {
  if (terms_.empty()) return ctx_->zero();
  const std::pair<int, int>* best = nullptr;
  const FieldElem* val = nullptr;
  for (const auto& [e, c] : terms_) {
    if (!best || std::make_pair(e.first + e.second, e.first) > std::make_pair(best->first + best->second, best->first)) {
      best = &e;
      val = &c;
    }
  }
  return *val;
}

BiPoly BiPoly::monic() const {
  if (terms_.empty()) return *this;
  return scale(ctx_->inv(leading_coeff()));
}

BiPoly BiPoly::scale(const FieldElem& c) const {
  Terms t;
  for (const auto& [e, v] : terms_) t.emplace(e, ctx_->mul(v, c));
  return BiPoly(ctx_, std::move(t));
}

BiPoly BiPoly::swap_xy() const {
  Terms t;
  for (const auto& [e, v] : terms_) t.emplace(Exponent{e.second, e.first}, v);
  return BiPoly(ctx_, std::move(t));
}

BiPoly BiPoly::partial_x() const {
  Terms t;
  const auto p = ctx_->characteristic();
  for (const auto& [e, v] : terms_) {
    if (e.first == 0) continue;
    t.emplace(Exponent{e.first - 1, e.second},
              ctx_->mul(v, ctx_->from_int(static_cast<std::int64_t>(static_cast<std::uint64_t>(e.first) % p))));
  }
  return BiPoly(ctx_, std::move(t));
}

BiPoly BiPoly::partial_y() const { return swap_xy().partial_x().swap_xy(); }

BiPoly BiPoly::shift_x(const FieldElem& a) const {
  if (terms_.empty()) return *this;
  const UniPoly xa = UniPoly(ctx_, {a, ctx_->one()});
  std::vector<UniPoly> cy = coeffs_in_y();
  for (auto& c : cy) c = c.compose(xa);
  return from_coeffs_in_y(ctx_, cy);
}

UniPoly BiPoly::specialize_x(const FieldElem& a) const {
  std::vector<FieldElem> out;
  for (const auto& c : coeffs_in_y()) out.push_back(c.eval(a));
  return UniPoly(ctx_, std::move(out));
}

BiPoly BiPoly::pow(std::uint64_t n) const {
  BiPoly r = constant(ctx_, ctx_->one());
  BiPoly b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

BiPoly BiPoly::map(FieldPtr target, const std::function<FieldElem(const FieldElem&)>& f) const {
  Terms t;
  for (const auto& [e, v] : terms_) t.emplace(e, f(v));
  return BiPoly(std::move(target), std::move(t));
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, FieldElem>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.first.first + a.first.second, a.first.first) >
           std::make_pair(b.first.first + b.first.second, b.first.first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    if (!first) os << '+';
    first = false;
    const bool unit = c == ctx_->one();
    std::vector<std::string> parts;
    if (!unit || (e.first == 0 && e.second == 0)) parts.push_back(coeff_text(*ctx_, c));
    if (e.first > 0) parts.push_back(e.first == 1 ? "x" : "x^" + std::to_string(e.first));
    if (e.second > 0) parts.push_back(e.second == 1 ? "y" : "y^" + std::to_string(e.second));
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  check_same_ctx(a.ctx_, b.ctx_);
  BiPoly::Terms t = a.terms_;
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = t.emplace(e, c);
    if (!inserted) it->second = a.ctx_->add(it->second, c);
  }
  return BiPoly(a.ctx_, std::move(t));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  check_same_ctx(a.ctx_, b.ctx_);
  BiPoly::Terms t = a.terms_;
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = t.emplace(e, a.ctx_->neg(c));
    if (!inserted) it->second = a.ctx_->sub(it->second, c);
  }
  return BiPoly(a.ctx_, std::move(t));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  check_same_ctx(a.ctx_, b.ctx_);
  BiPoly::Terms t;
  const auto& k = *a.ctx_;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      const BiPoly::Exponent e{ea.first + eb.first, ea.second + eb.second};
      const FieldElem prod = k.mul(ca, cb);
      auto [it, inserted] = t.emplace(e, prod);
      if (!inserted) it->second = k.add(it->second, prod);
    }
  }
  return BiPoly(a.ctx_, std::move(t));
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  return a.ctx_->fingerprint() == b.ctx_->fingerprint() && a.terms_ == b.terms_;
}

FieldElem bipoly_eval(const BiPoly& f, const FieldElem& x, const FieldElem& y) {
  const auto& k = f.field();
  k.check(x);
  k.check(y);
  FieldElem r = k.zero();
  const auto cy = f.coeffs_in_y();
  for (std::size_t j = cy.size(); j-- > 0;) r = k.add(k.mul(r, y), cy[j].eval(x));
  return r;
}

namespace {

using YPoly = std::vector<UniPoly>;  // coefficient of Y^j in K[X]

void trim_y(YPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UniPoly content_of(const YPoly& a, const FieldPtr& ctx) {
  UniPoly g(ctx);
  for (const auto& c : a) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

YPoly divide_coeffs(const YPoly& a, const UniPoly& c) {
  YPoly out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(v / c);
  return out;
}

/// lc(b)^k * a mod b in K[X][Y].
YPoly pseudo_rem(YPoly a, const YPoly& b) {
  const UniPoly& lb = b.back();
  trim_y(a);
  while (a.size() >= b.size() && !a.empty()) {
    const UniPoly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - la * b[i];
    trim_y(a);
  }
  return a;
}

}  // namespace

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  check_same_ctx(a.ctx(), b.ctx());
  if (b.is_zero()) fail(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  const auto& ctx = a.ctx();
  if (a.is_zero()) return BiPoly(ctx);
  YPoly r = a.coeffs_in_y();
  const YPoly bc = b.coeffs_in_y();
  if (r.size() < bc.size()) return std::nullopt;
  YPoly q(r.size() - bc.size() + 1, UniPoly(ctx));
  const UniPoly& lb = bc.back();
  while (!r.empty()) {
    if (r.size() < bc.size()) return std::nullopt;
    auto [qc, rem] = divmod(r.back(), lb);
    if (!rem.is_zero()) return std::nullopt;
    const std::size_t shift = r.size() - bc.size();
    q[shift] = qc;
    for (std::size_t i = 0; i < bc.size(); ++i) r[shift + i] = r[shift + i] - qc * bc[i];
    trim_y(r);
  }
  return BiPoly::from_coeffs_in_y(ctx, q);
}

UniPoly content_in_x(const BiPoly& f) { return content_of(f.coeffs_in_y(), f.ctx()); }

UniPoly content_in_y(const BiPoly& f) { return content_of(f.coeffs_in_x(), f.ctx()); }

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b) {
  check_same_ctx(a.ctx(), b.ctx());
  const auto& ctx = a.ctx();
  if (a.is_zero() && b.is_zero()) fail(ErrorKind::BothZero, "gcd(0, 0) is undefined");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  YPoly ay = a.coeffs_in_y(), by = b.coeffs_in_y();
  const UniPoly ca = content_of(ay, ctx), cb = content_of(by, ctx);
  const UniPoly c = poly_gcd(ca, cb);
  YPoly r0 = divide_coeffs(ay, ca), r1 = divide_coeffs(by, cb);
  if (r0.size() < r1.size()) std::swap(r0, r1);
  YPoly g;
  if (r1.size() <= 1) {
    g = {UniPoly::constant(ctx, ctx->one())};
  } else {
    for (;;) {
      YPoly r = pseudo_rem(r0, r1);
      if (r.empty()) {
        g = r1;
        break;
      }
      r = divide_coeffs(r, content_of(r, ctx));
      if (r.size() == 1) {
        g = {UniPoly::constant(ctx, ctx->one())};
        break;
      }
      r0 = std::move(r1);
      r1 = std::move(r);
    }
  }
  for (auto& v : g) v = v * c;
  return BiPoly::from_coeffs_in_y(ctx, g).monic();
}

bool lex_less(const BiPoly& a, const BiPoly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  if (a.deg_x() != b.deg_x()) return a.deg_x() < b.deg_x();
  // Compare coefficients from the largest exponent pair down.
  auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
  for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (!(ia->second == ib->second)) return ia->second < ib->second;
  }
  return ia == a.terms().rend() && ib != b.terms().rend();
}

// ---------------------------------------------------------------------------
// RationalFunc
// ---------------------------------------------------------------------------

RationalFunc::RationalFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
  check_same_ctx(num_.ctx(), den_.ctx());
  if (den_.is_zero()) fail(ErrorKind::ZeroDenominator, "denominator is the zero polynomial");
  const UniPoly g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const FieldElem inv = num_.field().inv(den_.lead());
  num_ = num_.scale(inv);
  den_ = den_.scale(inv);
}

RationalFunc RationalFunc::polynomial(UniPoly f) {
  auto ctx = f.ctx();
  return RationalFunc(std::move(f), UniPoly::constant(ctx, ctx->one()));
}

RationalFunc RationalFunc::scale(const FieldElem& c) const { return RationalFunc(num_.scale(c), den_); }

RationalFunc RationalFunc::pow(std::uint64_t n) const { return RationalFunc(num_.pow(n), den_.pow(n)); }

std::optional<FieldElem> RationalFunc::try_eval(const FieldElem& x) const {
  const FieldElem gx = den_.eval(x);
  if (gx.is_zero()) return std::nullopt;
  return num_.field().div(num_.eval(x), gx);
}

std::string RationalFunc::to_string(char var) const {
  if (den_.is_one()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
  return RationalFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunc rational_normalize(const UniPoly& f, const UniPoly& g) { return RationalFunc(f, g); }

RationalFunc rational_compose(const RationalFunc& r, const RationalFunc& f) {
  check_same_ctx(r.ctx(), f.ctx());
  const auto& ctx = r.ctx();
  const std::size_t n = static_cast<std::size_t>(std::max(r.num().size(), r.den().size())) - 1;
  // a(c/d) = sum a_i c^i d^{n-i} / d^n, same for b; the d^n cancels.
  auto homogenize = [&](const UniPoly& a) {
    UniPoly acc(ctx);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.coeffs()[i].is_zero()) continue;
      acc = acc + (f.num().pow(i) * f.den().pow(n - i)).scale(a.coeffs()[i]);
    }
    return acc;
  };
  const UniPoly num = homogenize(r.num());
  const UniPoly den = homogenize(r.den());
  if (den.is_zero()) fail(ErrorKind::PoleAt, "composition hits a pole of the outer function");
  RationalFunc out(num, den);
  const Degree expected = r.D().value() * f.D().value();
  if (out.D() != expected) {
    fail(ErrorKind::DegreeLawViolation, "deg(R o F) = " + out.D().to_string() + " but deg R * deg F = " +
                                            expected.to_string());
  }
  return out;
}

FieldElem rational_eval(const RationalFunc& psi, const FieldElem& x) {
  auto v = psi.try_eval(x);
  if (!v) fail(ErrorKind::PoleAt, "pole at x = " + psi.ctx()->to_string(x));
  return *v;
}

}  // namespace sgv
