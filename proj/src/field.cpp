#include "sgv/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace sgv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::CtxMismatch: return "CtxMismatch";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DegreeLawViolation: return "DegreeLawViolation";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::ConstantFunction: return "ConstantFunction";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::PerfectPowerInput: return "PerfectPowerInput";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::OrderDoesNotDivide: return "OrderDoesNotDivide";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AllWindowsContainPoles: return "AllWindowsContainPoles";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DegenerateDegrees: return "DegenerateDegrees";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::WindowEmpty: return "WindowEmpty";
    case ErrorKind::LambdaSetExhausted: return "LambdaSetExhausted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Residue pow_mod(Residue a, std::uint64_t e, Residue p) {
  Residue r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

Residue reduce(const BigInt& a, Residue p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r.convert_to<Residue>();
}

Residue mod_inverse(std::int64_t a, Residue p) {
  if (p < 2) fail(ErrorKind::InvalidArgument, "modulus must be at least 2");
  Residue x = reduce(a, p);
  if (x == 0) fail(ErrorKind::NonInvertible, std::to_string(a) + " is not invertible mod " + std::to_string(p));
  // Extended Euclid on signed 64-bit values; p < 2^63 keeps this in range.
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(x);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) fail(ErrorKind::NonInvertible, std::to_string(a) + " is not invertible mod " + std::to_string(p));
  return reduce(s0, p);
}

std::uint64_t centered_residue(std::int64_t a, std::uint64_t p) {
  if (p < 2) fail(ErrorKind::InvalidArgument, "modulus must be at least 2");
  Residue r = reduce(a, p);
  return std::min<std::uint64_t>(r, p - r);
}

BigInt centered_residue(const BigInt& a, const BigInt& p) {
  if (p < 2) fail(ErrorKind::InvalidArgument, "modulus must be at least 2");
  BigInt r = a % p;
  if (r < 0) r += p;
  BigInt other = p - r;
  return r < other ? r : other;
}

std::int64_t signed_residue(Residue a, Residue p) {
  a %= p;
  return 2 * a > p ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p)
                   : static_cast<std::int64_t>(a);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
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
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, only what the modulus search and the extension
// arithmetic need.
// ---------------------------------------------------------------------------
namespace {

using Dense = std::vector<std::uint64_t>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_mod(Dense a, const Dense& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv_lead = mod_inverse(static_cast<std::int64_t>(m.back()), p);
  while (a.size() > dm) {
    const std::uint64_t c = mul_mod(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = sub_mod(a[shift + i], mul_mod(c, m[i], p), p);
    }
    trim(a);
  }
  return a;
}

Dense dense_mulmod(const Dense& a, const Dense& b, const Dense& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
  }
  return dense_mod(std::move(r), m, p);
}

Dense dense_powmod(Dense base, std::uint64_t e, const Dense& m, std::uint64_t p) {
  Dense r{1};
  base = dense_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = dense_mulmod(r, base, m, p);
    base = dense_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Dense dense_gcd(Dense a, Dense b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = dense_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Dense dense_sub(Dense a, const Dense& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

std::uint64_t fingerprint_of(std::uint64_t p, int t, const std::vector<std::uint64_t>& modulus) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(p);
  mix(static_cast<std::uint64_t>(t));
  for (auto c : modulus) mix(c);
  return h == 0 ? 1 : h;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p) {
  Dense f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t t = f.size() - 1;
  if (t == 1) return true;
  const Dense x{0, 1};
  // X^{p^i} mod f for i = 0..t.
  std::vector<Dense> frob{x};
  for (std::size_t i = 1; i <= t; ++i) frob.push_back(dense_powmod(frob.back(), p, f, p));
  if (!dense_sub(frob[t], x, p).empty()) return false;
  for (std::uint64_t r : prime_divisors(t)) {
    Dense g = dense_gcd(f, dense_sub(frob[t / r], x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldElem / FieldCtx
// ---------------------------------------------------------------------------

bool FieldElem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

bool operator<(const FieldElem& a, const FieldElem& b) {
  if (a.fp_ != b.fp_) return a.fp_ < b.fp_;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  }
  return false;
}

FieldCtx::FieldCtx(std::uint64_t p, int t, std::vector<std::uint64_t> modulus)
    : p_(p), t_(t), modulus_(std::move(modulus)), order_(boost::multiprecision::pow(BigInt(p), t)),
      fp_(fingerprint_of(p, t, modulus_)) {}

FieldPtr FieldCtx::prime(std::uint64_t p) {
  if (p >= (1ull << 32)) fail(ErrorKind::Unsupported, std::to_string(p) + " exceeds the supported range p < 2^32");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  return extension(p, 1);
}

FieldPtr FieldCtx::extension(std::uint64_t p, int t, int max_degree) {
  if (p >= (1ull << 32)) fail(ErrorKind::Unsupported, std::to_string(p) + " exceeds the supported range p < 2^32");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (t < 1 || t > max_degree) {
    fail(ErrorKind::DegreeTooLarge, "extension degree " + std::to_string(t) + " outside [1, " +
                                        std::to_string(max_degree) + "]");
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, int>, FieldPtr> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({p, t});
    if (it != cache.end()) return it->second;
  }
  std::vector<std::uint64_t> modulus;
  if (t > 1) {
    // Walk monic polynomials in lexicographic order of (a_{t-1}, ..., a_0).
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(t), 0);
    for (;;) {
      std::vector<std::uint64_t> cand(digits.begin(), digits.end());
      cand.push_back(1);
      if (cand[0] != 0 && is_irreducible_mod_p(cand, p)) {
        modulus = std::move(cand);
        break;
      }
      // digits[0] is a_0, least significant.
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) fail(ErrorKind::Internal, "no irreducible polynomial found");
    }
  }
  FieldPtr ctx(new FieldCtx(p, t, std::move(modulus)));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(p, t), ctx);
  return it->second;
}

FieldPtr FieldCtx::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p >= (1ull << 32)) fail(ErrorKind::Unsupported, std::to_string(p) + " exceeds the supported range p < 2^32");
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) fail(ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  if (!is_irreducible_mod_p(modulus, p)) fail(ErrorKind::InvalidArgument, "modulus is not irreducible");
  const int t = static_cast<int>(modulus.size()) - 1;
  if (t == 1) return extension(p, 1);
  return FieldPtr(new FieldCtx(p, t, std::move(modulus)));
}

FieldPtr ext_field_build(std::uint64_t p, int t) { return FieldCtx::extension(p, t); }

FieldElem FieldCtx::make(FieldElem::Coeffs c) const {
  FieldElem e;
  e.fp_ = fp_;
  e.c_ = std::move(c);
  return e;
}

FieldElem FieldCtx::zero() const { return make(FieldElem::Coeffs(static_cast<std::size_t>(t_), 0)); }

FieldElem FieldCtx::one() const {
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  c[0] = 1;
  return make(std::move(c));
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  c[0] = static_cast<std::uint32_t>(reduce(v, p_));
  return make(std::move(c));
}

FieldElem FieldCtx::from_big(const BigInt& v) const {
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  c[0] = static_cast<std::uint32_t>(reduce(v, p_));
  return make(std::move(c));
}

FieldElem FieldCtx::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(t_)) {
    fail(ErrorKind::InvalidArgument, "too many coefficients for F_{p^" + std::to_string(t_) + "}");
  }
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<std::uint32_t>(coeffs[i] % p_);
  return make(std::move(c));
}

FieldElem FieldCtx::generator() const {
  if (t_ == 1) return zero();
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  c[1] = 1;
  return make(std::move(c));
}

FieldElem FieldCtx::element_at(std::uint64_t index) const {
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  for (int i = 0; i < t_; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return make(std::move(c));
}

std::uint64_t FieldCtx::index_of(const FieldElem& a) const {
  check(a);
  std::uint64_t idx = 0;
  for (int i = t_; i-- > 0;) idx = idx * p_ + a.coeff(static_cast<std::size_t>(i));
  return idx;
}

void FieldCtx::check(const FieldElem& a) const {
  if (a.fp_ != fp_) fail(ErrorKind::CtxMismatch, "element does not belong to this field");
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem::Coeffs c(static_cast<std::size_t>(t_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(add_mod(a.c_[i], b.c_[i], p_));
  return make(std::move(c));
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  FieldElem::Coeffs c(static_cast<std::size_t>(t_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(sub_mod(a.c_[i], b.c_[i], p_));
  return make(std::move(c));
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  check(a);
  FieldElem::Coeffs c(static_cast<std::size_t>(t_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(a.c_[i] == 0 ? 0 : p_ - a.c_[i]);
  return make(std::move(c));
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  check(a);
  check(b);
  if (t_ == 1) {
    FieldElem::Coeffs c(1);
    c[0] = static_cast<std::uint32_t>(mul_mod(a.c_[0], b.c_[0], p_));
    return make(std::move(c));
  }
  const std::size_t t = static_cast<std::size_t>(t_);
  boost::container::small_vector<std::uint64_t, 16> r(2 * t - 1, 0);
  for (std::size_t i = 0; i < t; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < t; ++j) r[i + j] = add_mod(r[i + j], mul_mod(a.c_[i], b.c_[j], p_), p_);
  }
  for (std::size_t k = 2 * t - 1; k-- > t;) {
    const std::uint64_t c = r[k];
    if (c == 0) continue;
    // X^t = -sum modulus[i] X^i
    for (std::size_t i = 0; i < t; ++i) r[k - t + i] = sub_mod(r[k - t + i], mul_mod(c, modulus_[i], p_), p_);
  }
  FieldElem::Coeffs c(t);
  for (std::size_t i = 0; i < t; ++i) c[i] = static_cast<std::uint32_t>(r[i]);
  return make(std::move(c));
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  check(a);
  if (a.is_zero()) fail(ErrorKind::ZeroInverse, "inverse of zero");
  if (t_ == 1) {
    FieldElem::Coeffs c(1);
    c[0] = static_cast<std::uint32_t>(mod_inverse(static_cast<std::int64_t>(a.c_[0]), p_));
    return make(std::move(c));
  }
  // Extended Euclid in F_p[X] against the modulus.
  Dense r0(modulus_.begin(), modulus_.end());
  Dense r1(a.c_.begin(), a.c_.end());
  trim(r1);
  Dense s0{}, s1{1};
  while (!r1.empty()) {
    // q, r = divmod(r0, r1)
    Dense rem = r0;
    Dense q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
    const std::uint64_t inv_lead = mod_inverse(static_cast<std::int64_t>(r1.back()), p_);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::uint64_t c = mul_mod(rem.back(), inv_lead, p_);
      const std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] = sub_mod(rem[shift + i], mul_mod(c, r1[i], p_), p_);
      trim(rem);
    }
    // s2 = s0 - q*s1
    Dense qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = add_mod(qs[i + j], mul_mod(q[i], s1[j], p_), p_);
    Dense s2 = dense_sub(s0, qs, p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant.
  const std::uint64_t inv_c = mod_inverse(static_cast<std::int64_t>(r0[0]), p_);
  FieldElem::Coeffs c(static_cast<std::size_t>(t_), 0);
  for (std::size_t i = 0; i < s0.size() && i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(mul_mod(s0[i], inv_c, p_));
  return make(std::move(c));
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t e) const {
  check(a);
  FieldElem r = one();
  FieldElem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, const BigInt& e) const {
  check(a);
  if (e < 0) return pow(inv(a), BigInt(-e));
  if (e == 0) return one();
  FieldElem r = one();
  for (std::size_t bit = boost::multiprecision::msb(e) + 1; bit-- > 0;) {
    r = mul(r, r);
    if (boost::multiprecision::bit_test(e, bit)) r = mul(r, a);
  }
  return r;
}

FieldElem FieldCtx::frobenius(const FieldElem& a) const {
  if (t_ == 1) {
    check(a);
    return a;
  }
  return pow(a, p_);
}

FieldElem FieldCtx::pth_root(const FieldElem& a) const {
  FieldElem r = a;
  for (int i = 1; i < t_; ++i) r = frobenius(r);
  check(r);
  return r;
}

std::string FieldCtx::to_string(const FieldElem& a) const {
  check(a);
  if (t_ == 1) return std::to_string(a.c_[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = t_; i-- > 0;) {
    const auto c = a.c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'a';
    if (i > 1) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

FieldElem ext_arith(const FieldCtx& ctx, FieldOp op, const FieldElem& a, const FieldElem& b) {
  switch (op) {
    case FieldOp::Add: return ctx.add(a, b);
    case FieldOp::Sub: return ctx.sub(a, b);
    case FieldOp::Mul: return ctx.mul(a, b);
    case FieldOp::Inv: return ctx.inv(a);
    case FieldOp::Pow: return ctx.pow(a, ctx.index_of(b));
  }
  fail(ErrorKind::Internal, "unknown field operation");
}

}  // namespace sgv
