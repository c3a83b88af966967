#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "sgv/errors.hpp"

namespace sgv {

using BigInt = boost::multiprecision::cpp_int;
using Residue = std::uint64_t;

// ---------------------------------------------------------------------------
// Prime-field helpers. All residues live in [0, p) with p < 2^32, so a
// product of two residues always fits in 64 bits.
// ---------------------------------------------------------------------------

inline Residue add_mod(Residue a, Residue b, Residue p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }
inline Residue mul_mod(Residue a, Residue b, Residue p) { return (a * b) % p; }
Residue pow_mod(Residue a, std::uint64_t e, Residue p);

/// Reduces an arbitrary signed integer into [0, p).
inline Residue reduce(std::int64_t a, Residue p) {
  auto r = a % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}
Residue reduce(const BigInt& a, Residue p);

/// b in [1, p) with a*b = 1 (mod p). Throws NonInvertible when p | a.
Residue mod_inverse(std::int64_t a, Residue p);

/// <a>_p = min_k |a - kp|, the distance from a to the nearest multiple of p.
std::uint64_t centered_residue(std::int64_t a, std::uint64_t p);
BigInt centered_residue(const BigInt& a, const BigInt& p);

/// Signed representative of a residue in [-p/2, p/2].
std::int64_t signed_residue(Residue a, Residue p);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

// ---------------------------------------------------------------------------
// F_{p^t}
// ---------------------------------------------------------------------------

class FieldCtx;

/// An element of some F_{p^t}: t coefficients in [0, p) in ascending powers of
/// the generator. The fingerprint names the context it belongs to.
class FieldElem {
 public:
  using Coeffs = boost::container::small_vector<std::uint32_t, 8>;

  FieldElem() = default;

  std::uint64_t ctx_fingerprint() const noexcept { return fp_; }
  std::size_t size() const noexcept { return c_.size(); }
  std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  const Coeffs& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept;
  /// Prime-field shortcut; only meaningful when t = 1.
  Residue value() const noexcept { return c_.empty() ? 0 : c_[0]; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.fp_ == b.fp_ && a.c_ == b.c_;
  }
  /// Orders by the base-p integer with the highest power most significant.
  friend bool operator<(const FieldElem& a, const FieldElem& b);

 private:
  friend class FieldCtx;
  std::uint64_t fp_ = 0;
  Coeffs c_;
};

enum class FieldOp { Add, Sub, Mul, Inv, Pow };

/// Arithmetic context for F_{p^t} = F_p[X]/(modulus). Immutable once built.
class FieldCtx {
 public:
  /// Public construction cap on the extension degree.
  static constexpr int kMaxPublicDegree = 12;
  /// Internal cap used when the factoring code needs larger towers.
  static constexpr int kMaxInternalDegree = 64;

  /// Plain prime field F_p. Throws NotPrime, or Unsupported when p >= 2^32.
  static std::shared_ptr<const FieldCtx> prime(std::uint64_t p);
  /// F_{p^t} with the lexicographically smallest monic irreducible modulus.
  /// Results are cached, so equal (p, t) give the same object.
  static std::shared_ptr<const FieldCtx> extension(std::uint64_t p, int t,
                                                   int max_degree = kMaxPublicDegree);
  /// F_p[X]/(modulus) for a caller-supplied monic irreducible modulus.
  static std::shared_ptr<const FieldCtx> with_modulus(std::uint64_t p,
                                                      std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return t_; }
  bool is_prime_field() const noexcept { return t_ == 1; }
  /// Monic modulus in ascending powers (length t + 1). Empty for t = 1.
  std::span<const std::uint64_t> modulus() const noexcept { return modulus_; }
  const BigInt& order() const noexcept { return order_; }
  std::uint64_t fingerprint() const noexcept { return fp_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_big(const BigInt& v) const;
  FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  /// The class of X, a root of the modulus.
  FieldElem generator() const;
  /// Element whose base-p digits (highest power most significant) spell index.
  FieldElem element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElem& a) const;

  bool owns(const FieldElem& a) const noexcept { return a.fp_ == fp_; }
  void check(const FieldElem& a) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  FieldElem pow(const FieldElem& a, const BigInt& e) const;
  FieldElem pow(const FieldElem& a, std::uint64_t e) const;
  /// a^p.
  FieldElem frobenius(const FieldElem& a) const;
  /// The unique b with b^p = a.
  FieldElem pth_root(const FieldElem& a) const;

  std::string to_string(const FieldElem& a) const;

 private:
  FieldCtx(std::uint64_t p, int t, std::vector<std::uint64_t> modulus);
  FieldElem make(FieldElem::Coeffs c) const;

  std::uint64_t p_;
  int t_;
  std::vector<std::uint64_t> modulus_;
  BigInt order_;
  std::uint64_t fp_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// F_{p^t}, deterministic for fixed (p, t). Throws NotPrime / DegreeTooLarge.
FieldPtr ext_field_build(std::uint64_t p, int t);

/// Dispatches one field operation. For Pow the exponent is b's prime-field value
/// when t = 1, or the integer spelled by its base-p digits otherwise; use
/// FieldCtx::pow directly for arbitrary exponents.
FieldElem ext_arith(const FieldCtx& ctx, FieldOp op, const FieldElem& a, const FieldElem& b);

/// Rabin irreducibility test for a monic polynomial over F_p (ascending
/// coefficients). Exposed for tests and for modulus search.
bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p);

}  // namespace sgv
