#include "sgv/factor.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace sgv {

namespace {

UniPoly one_poly(const FieldPtr& k) { return UniPoly::constant(k, k->one()); }

FieldElem random_elem(const FieldCtx& k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k.degree()));
  for (auto& v : c) v = rng() % k.characteristic();
  return k.from_coeffs(c);
}

/// f(X) = sum a_{ip} X^{ip} -> sum a_{ip}^{1/p} X^i, valid when f' = 0.
UniPoly pth_root_poly(const UniPoly& f) {
  const auto& k = f.field();
  const auto p = k.characteristic();
  std::vector<FieldElem> out;
  for (std::size_t i = 0; i < f.size(); i += p) out.push_back(k.pth_root(f.coeffs()[i]));
  return UniPoly(f.ctx(), std::move(out));
}

void squarefree_rec(const UniPoly& f, int scale, std::vector<std::pair<UniPoly, int>>& out) {
  if (f.is_constant()) return;
  const int p = static_cast<int>(f.field().characteristic());
  const UniPoly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_rec(pth_root_poly(f), scale * p, out);
    return;
  }
  UniPoly c = poly_gcd(f, fp);
  UniPoly w = f / c;
  for (int i = 1; !w.is_constant(); ++i) {
    const UniPoly y = poly_gcd(w, c);
    const UniPoly z = w / y;
    if (!z.is_constant()) out.emplace_back(z.monic(), i * scale);
    w = y;
    c = c / y;
  }
  if (!c.is_constant()) squarefree_rec(pth_root_poly(c), scale * p, out);
}

std::vector<std::pair<UniPoly, int>> distinct_degree(UniPoly f) {
  std::vector<std::pair<UniPoly, int>> out;
  const auto& ctx = f.ctx();
  const BigInt& q = ctx->order();
  const UniPoly x = UniPoly::x(ctx);
  UniPoly h = x % f;
  for (int d = 1; f.size() >= static_cast<std::size_t>(2 * d + 1); ++d) {
    h = powmod(h, q, f);
    const UniPoly g = poly_gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (!f.is_constant()) out.emplace_back(f.monic(), f.degree().value());
  return out;
}

void equal_degree(const UniPoly& g, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
  const int n = g.degree().value();
  if (n == d) {
    out.push_back(g);
    return;
  }
  const auto& ctx = g.ctx();
  const auto& k = *ctx;
  const bool odd = k.characteristic() != 2;
  const BigInt exponent = odd ? (boost::multiprecision::pow(k.order(), static_cast<unsigned>(d)) - 1) / 2 : BigInt(0);
  for (;;) {
    std::vector<FieldElem> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = random_elem(k, rng);
    const UniPoly a(ctx, std::move(c));
    if (a.is_constant()) continue;
    UniPoly b(ctx);
    if (odd) {
      b = powmod(a, exponent, g) - one_poly(ctx);
    } else {
      // Absolute trace to F_2: a + a^2 + ... + a^{2^{td-1}}.
      UniPoly t = a % g;
      b = t;
      for (int i = 1; i < k.degree() * d; ++i) {
        t = mulmod(t, t, g);
        b = b + t;
      }
    }
    if (b.is_zero()) continue;
    const UniPoly h = poly_gcd(b, g);
    if (h.is_constant() || h.size() == g.size()) continue;
    equal_degree(h, d, rng, out);
    equal_degree(g / h, d, rng, out);
    return;
  }
}

}  // namespace

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree decomposition of the zero polynomial");
  std::vector<std::pair<UniPoly, int>> out;
  squarefree_rec(f.monic(), 1, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

FactorMultiset factor_univariate(const UniPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  FactorMultiset res{f.lead(), {}};
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ f.size());
  for (const auto& [z, mult] : squarefree_decomposition(f)) {
    for (const auto& [g, d] : distinct_degree(z)) {
      std::vector<UniPoly> parts;
      equal_degree(g, d, rng, parts);
      for (auto& u : parts) res.factors.emplace_back(u.monic(), mult);
    }
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return res;
}

FactorMultiset factor_univariate(const UniPoly& f, const FieldPtr& ctx) {
  check_same_ctx(f.ctx(), ctx);
  return factor_univariate(f);
}

UniPoly FactorMultiset::expand(const FieldPtr& ctx) const {
  UniPoly r = UniPoly::constant(ctx, unit);
  for (const auto& [u, m] : factors) r = r * u.pow(static_cast<std::uint64_t>(m));
  return r;
}

std::vector<FieldElem> roots(const UniPoly& f) {
  std::vector<FieldElem> out;
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  if (f.is_constant()) return out;
  for (const auto& [u, m] : factor_univariate(f).factors) {
    if (u.size() == 2) out.push_back(f.field().neg(u.coeffs()[0]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->characteristic() != to_->characteristic() || to_->degree() % from_->degree() != 0) {
    fail(ErrorKind::FieldMismatch, "no embedding of F_" + std::to_string(from_->characteristic()) + "^" +
                                       std::to_string(from_->degree()) + " into F_" +
                                       std::to_string(to_->characteristic()) + "^" + std::to_string(to_->degree()));
  }
  if (from_->is_prime_field()) {
    powers_ = {to_->one()};
    return;
  }
  std::vector<FieldElem> c;
  for (auto v : from_->modulus()) c.push_back(to_->from_int(static_cast<std::int64_t>(v)));
  const auto rs = roots(UniPoly(to_, std::move(c)));
  if (rs.empty()) fail(ErrorKind::Internal, "modulus has no root in the target field");
  FieldElem g = to_->one();
  for (int i = 0; i < from_->degree(); ++i) {
    powers_.push_back(g);
    g = to_->mul(g, rs.front());
  }
}

FieldElem FieldEmbedding::apply(const FieldElem& x) const {
  from_->check(x);
  FieldElem r = to_->zero();
  for (std::size_t i = 0; i < powers_.size(); ++i) {
    const auto c = x.coeff(i);
    if (c) r = to_->add(r, to_->mul(to_->from_int(static_cast<std::int64_t>(c)), powers_[i]));
  }
  return r;
}

std::optional<FieldElem> FieldEmbedding::preimage(const FieldElem& y) const {
  to_->check(y);
  const auto p = to_->characteristic();
  const std::size_t rows = static_cast<std::size_t>(to_->degree());
  const std::size_t cols = powers_.size();
  std::vector<std::vector<Residue>> m(rows, std::vector<Residue>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = powers_[c].coeff(r);
    m[r][cols] = y.coeff(r);
  }
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const Residue inv = mod_inverse(static_cast<std::int64_t>(m[rank][c]), p);
    for (auto& v : m[rank]) v = mul_mod(v, inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Residue f = m[r][c];
      for (std::size_t k = 0; k <= cols; ++k) m[r][k] = sub_mod(m[r][k], mul_mod(f, m[rank][k], p), p);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (m[r][cols] != 0) return std::nullopt;
  }
  std::vector<std::uint64_t> x(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = m[r][cols];
  return from_->from_coeffs(x);
}

UniPoly FieldEmbedding::apply(const UniPoly& f) const {
  return f.map(to_, [this](const FieldElem& c) { return apply(c); });
}

BiPoly FieldEmbedding::apply(const BiPoly& f) const {
  return f.map(to_, [this](const FieldElem& c) { return apply(c); });
}

std::optional<BiPoly> FieldEmbedding::preimage(const BiPoly& f) const {
  BiPoly::Terms t;
  for (const auto& [e, c] : f.terms()) {
    auto v = preimage(c);
    if (!v) return std::nullopt;
    t.emplace(e, *v);
  }
  return BiPoly(from_, std::move(t));
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

BiPoly UnivariateDivisor::as_bipoly() const { return variable == 'x' ? BiPoly::from_x(poly) : BiPoly::from_y(poly); }

std::optional<UnivariateDivisor> univariate_factor_of(const BiPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "univariate divisor of the zero polynomial");
  const UniPoly cx = content_in_x(f);
  if (!cx.is_constant()) return UnivariateDivisor{cx, 'x'};
  const UniPoly cy = content_in_y(f);
  if (!cy.is_constant()) return UnivariateDivisor{cy, 'y'};
  return std::nullopt;
}

BiPoly BiFactorization::expand(const FieldPtr& ctx) const {
  BiPoly r = BiPoly::constant(ctx, unit);
  for (const auto& [h, m] : factors) r = r * h.pow(static_cast<std::uint64_t>(m));
  return r;
}

namespace {

// Truncated power series in X with coefficients in K[Y]: s[k] is the
// coefficient of X^k.
using Series = std::vector<UniPoly>;

Series series_mul(const Series& a, const Series& b, std::size_t n, const FieldPtr& ctx) {
  Series out(n, UniPoly(ctx));
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

/// Series of a polynomial in X, viewed as constants in K[Y].
Series series_of_x(const UniPoly& c, std::size_t n) {
  Series out(n, UniPoly(c.ctx()));
  for (std::size_t k = 0; k < std::min(c.size(), n); ++k) out[k] = UniPoly::constant(c.ctx(), c.coeffs()[k]);
  return out;
}

Series series_of(const BiPoly& f, std::size_t n) {
  const auto& ctx = f.ctx();
  std::vector<std::vector<FieldElem>> raw(n);
  const std::size_t ny = static_cast<std::size_t>(f.deg_y().value()) + 1;
  for (auto& r : raw) r.assign(ny, ctx->zero());
  for (const auto& [e, c] : f.terms()) {
    if (static_cast<std::size_t>(e.first) < n) raw[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = c;
  }
  Series out;
  for (auto& r : raw) out.emplace_back(ctx, std::move(r));
  return out;
}

BiPoly bipoly_of(const Series& s, const FieldPtr& ctx) {
  BiPoly::Terms t;
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (std::size_t j = 0; j < s[k].size(); ++j) {
      if (!s[k].coeffs()[j].is_zero()) t.emplace(BiPoly::Exponent{static_cast<int>(k), static_cast<int>(j)}, s[k].coeffs()[j]);
    }
  }
  return BiPoly(ctx, std::move(t));
}

/// 1/c mod X^n for c(0) != 0.
UniPoly series_inverse(const UniPoly& c, std::size_t n) {
  const auto& k = c.field();
  std::vector<FieldElem> inv(n, k.zero());
  const FieldElem i0 = k.inv(c.coeff(0));
  inv[0] = i0;
  for (std::size_t m = 1; m < n; ++m) {
    FieldElem acc = k.zero();
    for (std::size_t i = 1; i <= m; ++i) acc = k.add(acc, k.mul(c.coeff(i), inv[m - i]));
    inv[m] = k.neg(k.mul(i0, acc));
  }
  return UniPoly(c.ctx(), std::move(inv));
}

/// Lifts target = g0 * h0 (mod X) to target = g * h (mod X^n), g and h monic in Y.
std::pair<Series, Series> hensel_lift(const Series& target, const UniPoly& g0, const UniPoly& h0, std::size_t n) {
  const auto& ctx = g0.ctx();
  const ExtendedGcd eg = extended_gcd(g0, h0);
  if (!eg.g.is_one()) fail(ErrorKind::Internal, "Hensel lifting needs coprime factors");
  Series g(n, UniPoly(ctx)), h(n, UniPoly(ctx));
  g[0] = g0;
  h[0] = h0;
  for (std::size_t k = 1; k < n; ++k) {
    UniPoly e = target[k];
    for (std::size_t i = 0; i <= k; ++i) e = e - g[i] * h[k - i];
    if (e.is_zero()) continue;
    const UniPoly a = (eg.t * e) % g0;
    g[k] = a;
    h[k] = (e - a * h0) / g0;
  }
  return {std::move(g), std::move(h)};
}

std::vector<BiPoly> factor_squarefree_primitive(const BiPoly& s);

/// Irreducible factors of s over its field via a larger field of degree k over it.
std::vector<BiPoly> factor_via_extension(const BiPoly& s, int k) {
  const auto& base = s.ctx();
  const int t = base->degree() * k;
  if (t > FieldCtx::kMaxInternalDegree) fail(ErrorKind::DegreeTooLarge, "extension tower exceeds the internal cap");
  const auto ext = FieldCtx::extension(base->characteristic(), t, FieldCtx::kMaxInternalDegree);
  const FieldEmbedding emb(base, ext);
  const auto parts = factor_squarefree_primitive(emb.apply(s));
  const BigInt& q = base->order();
  auto sigma = [&](const BiPoly& f) { return f.map(ext, [&](const FieldElem& c) { return ext->pow(c, q); }); };
  std::vector<bool> used(parts.size(), false);
  std::vector<BiPoly> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    BiPoly prod = parts[i];
    for (BiPoly cur = sigma(parts[i]); !(cur == parts[i]); cur = sigma(cur)) {
      auto it = std::find(parts.begin(), parts.end(), cur);
      if (it == parts.end()) fail(ErrorKind::Internal, "conjugate factor missing");
      used[static_cast<std::size_t>(it - parts.begin())] = true;
      prod = prod * cur;
    }
    auto back = emb.preimage(prod.monic());
    if (!back) fail(ErrorKind::Internal, "orbit product is not defined over the base field");
    out.push_back(*back);
  }
  return out;
}

/// s squarefree, with no factor in K[X] or K[Y], deg_x, deg_y >= 1.
std::vector<BiPoly> factor_squarefree_primitive(const BiPoly& s) {
  const auto& ctx = s.ctx();
  const auto& k = *ctx;
  const int dx = s.deg_x().value();
  const int dy = s.deg_y().value();
  if (dy == 1 || dx == 1) return {s.monic()};

  const UniPoly lc = s.coeffs_in_y().back();
  const std::uint64_t bad_bound = 2ULL * static_cast<std::uint64_t>(dx) * static_cast<std::uint64_t>(dy);
  const std::uint64_t tries = k.order() > bad_bound ? bad_bound + 1 : static_cast<std::uint64_t>(k.order());
  std::optional<FieldElem> point;
  for (std::uint64_t i = 0; i < tries && !point; ++i) {
    const FieldElem a = k.element_at(i);
    if (lc.eval(a).is_zero()) continue;
    const UniPoly u = s.specialize_x(a);
    if (poly_gcd(u, u.derivative()).is_one()) point = a;
  }
  if (!point) {
    int ext = 2;
    while (boost::multiprecision::pow(k.order(), static_cast<unsigned>(ext)) <= bad_bound) ++ext;
    return factor_via_extension(s, ext);
  }

  const BiPoly shifted = s.shift_x(*point);
  const std::size_t n = static_cast<std::size_t>(dx) + 1;
  const auto base = factor_univariate(shifted.specialize_x(k.zero())).factors;
  if (base.size() == 1) return {s.monic()};

  // Monic normalization over K[[X]] and multifactor lift.
  const UniPoly lcs = shifted.coeffs_in_y().back();
  Series target = series_mul(series_of(shifted, n), series_of_x(series_inverse(lcs, n), n), n, ctx);
  std::vector<Series> lifted;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    UniPoly rest = one_poly(ctx);
    for (std::size_t j = i + 1; j < base.size(); ++j) rest = rest * base[j].first;
    auto [g, h] = hensel_lift(target, base[i].first, rest, n);
    lifted.push_back(std::move(g));
    target = std::move(h);
  }
  lifted.push_back(std::move(target));

  // Recombination: subsets of increasing size, exact trial division.
  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  BiPoly cur = shifted;
  std::vector<BiPoly> found;
  for (std::size_t size = 1; 2 * size <= remaining.size();) {
    bool hit = false;
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      Series prod = series_of_x(cur.coeffs_in_y().back(), n);
      for (auto i : idx) prod = series_mul(prod, lifted[remaining[i]], n, ctx);
      BiPoly cand = bipoly_of(prod, ctx);
      const UniPoly cont = content_in_x(cand);
      std::vector<UniPoly> cy = cand.coeffs_in_y();
      for (auto& c : cy) c = c / cont;
      cand = BiPoly::from_coeffs_in_y(ctx, cy);
      if (auto q = divide_exact(cur, cand)) {
        found.push_back(cand);
        cur = *q;
        for (std::size_t j = idx.size(); j-- > 0;) remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx[j]));
        hit = true;
        break;
      }
      // Next combination of size `size` from remaining.size() indices.
      std::size_t j = size;
      while (j > 0 && idx[j - 1] == remaining.size() - size + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < size; ++l) idx[l] = idx[l - 1] + 1;
    }
    if (!hit) ++size;
  }
  found.push_back(cur);
  const FieldElem back = k.neg(*point);
  for (auto& f : found) f = f.shift_x(back).monic();
  return found;
}

void check_bivariate_input(const BiPoly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  const int D = f.total_degree().value();
  if (D < 1 || D > 8) fail(ErrorKind::DegreeOutOfRange, "total degree " + std::to_string(D) + " outside [1, 8]");
  if (f.field().characteristic() <= static_cast<std::uint64_t>(D)) {
    fail(ErrorKind::CharTooSmall, "characteristic " + std::to_string(f.field().characteristic()) +
                                      " does not exceed total degree " + std::to_string(D));
  }
}

BiFactorization factor_unchecked(const BiPoly& f) {
  const auto& ctx = f.ctx();
  BiFactorization res{f.leading_coeff(), {}};
  BiPoly g = f.monic();
  auto strip = [&](const UniPoly& c, bool in_x) {
    if (c.is_constant()) return;
    for (const auto& [u, m] : factor_univariate(c).factors) res.factors.emplace_back(in_x ? BiPoly::from_x(u) : BiPoly::from_y(u), m);
    g = *divide_exact(g, in_x ? BiPoly::from_x(c) : BiPoly::from_y(c));
  };
  strip(content_in_x(g), true);
  strip(content_in_y(g), false);
  if (!g.is_constant()) {
    const BiPoly sq = *divide_exact(g, bipoly_gcd(g, g.partial_y()));
    for (const auto& h : factor_squarefree_primitive(sq)) {
      int m = 0;
      while (auto q = divide_exact(g, h)) {
        g = *q;
        ++m;
      }
      if (m == 0) fail(ErrorKind::Internal, "factor does not divide its input");
      res.factors.emplace_back(h, m);
    }
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  (void)ctx;
  return res;
}

}  // namespace

BiFactorization factor_bivariate(const BiPoly& f) {
  check_bivariate_input(f);
  return factor_unchecked(f);
}

bool is_irreducible_bivariate(const BiPoly& f, const FieldPtr& ctx) {
  check_bivariate_input(f);
  const BiPoly g = f.ctx()->fingerprint() == ctx->fingerprint() ? f : FieldEmbedding(f.ctx(), ctx).apply(f);
  const auto fac = factor_unchecked(g);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

IrreducibilityVerdict is_absolutely_irreducible(const BiPoly& f) {
  check_bivariate_input(f);
  IrreducibilityVerdict v;
  const auto& base = f.ctx();
  const auto fac = factor_unchecked(f);
  v.over_base = fac.factors.size() == 1 && fac.factors[0].second == 1;
  if (!v.over_base) {
    v.witness = fac.factors.front().first;
    v.witness_field = base;
    v.witness_degree = base->degree();
    return v;
  }
  const int D = f.total_degree().value();
  for (int r = 2; r <= D; ++r) {
    if (D % r) continue;
    const int t = base->degree() * r;
    if (t > FieldCtx::kMaxInternalDegree) fail(ErrorKind::DegreeTooLarge, "extension tower exceeds the internal cap");
    const auto ext = FieldCtx::extension(base->characteristic(), t, FieldCtx::kMaxInternalDegree);
    const auto efac = factor_unchecked(FieldEmbedding(base, ext).apply(f));
    if (efac.factors.size() > 1) {
      v.witness = efac.factors.front().first;
      v.witness_field = ext;
      v.witness_degree = t;
      return v;
    }
  }
  v.absolutely = true;
  return v;
}

IrreducibilityVerdict is_absolutely_irreducible(const BiPoly& f, std::uint64_t p) {
  if (f.field().characteristic() != p) fail(ErrorKind::FieldMismatch, "polynomial is not over a field of characteristic " + std::to_string(p));
  return is_absolutely_irreducible(f);
}

// ---------------------------------------------------------------------------
// Perfect powers
// ---------------------------------------------------------------------------

int perfect_power_exponent(const RationalFunc& psi) {
  if (psi.is_constant()) fail(ErrorKind::ConstantFunction, "constant rational function");
  int n = 0;
  for (const UniPoly* part : {&psi.num(), &psi.den()}) {
    if (part->is_constant()) continue;
    for (const auto& [z, i] : squarefree_decomposition(*part)) n = std::gcd(n, i);
  }
  return n;
}

PerfectPowerRoot perfect_power_root(const RationalFunc& psi) {
  const int n = perfect_power_exponent(psi);
  if (n == 1) return {1, psi};
  const auto& ctx = psi.ctx();
  auto nth_root_part = [&](const UniPoly& f) {
    UniPoly r = one_poly(ctx);
    if (f.is_constant()) return r;
    for (const auto& [z, i] : squarefree_decomposition(f)) r = r * z.pow(static_cast<std::uint64_t>(i / n));
    return r;
  };
  const UniPoly a = nth_root_part(psi.num());
  const UniPoly b = nth_root_part(psi.den());
  const FieldElem c = psi.num().lead();

  // gamma^n = c, in the smallest extension that has one.
  const UniPoly eq = UniPoly::monomial(ctx, ctx->one(), static_cast<std::size_t>(n)) - UniPoly::constant(ctx, c);
  const auto fac = factor_univariate(eq).factors;
  std::size_t best = 0;
  for (std::size_t i = 1; i < fac.size(); ++i) {
    if (fac[i].first.size() < fac[best].first.size()) best = i;
  }
  const int r = fac[best].first.degree().value();
  if (r == 1) {
    const FieldElem gamma = roots(eq).front();
    return {n, RationalFunc(a.scale(gamma), b)};
  }
  const int t = ctx->degree() * r;
  if (t > FieldCtx::kMaxInternalDegree) fail(ErrorKind::DegreeTooLarge, "root needs an extension beyond the internal cap");
  const auto ext = FieldCtx::extension(ctx->characteristic(), t, FieldCtx::kMaxInternalDegree);
  const FieldEmbedding emb(ctx, ext);
  const FieldElem gamma = roots(emb.apply(fac[best].first)).front();
  return {n, RationalFunc(emb.apply(a).scale(gamma), emb.apply(b))};
}

}  // namespace sgv
