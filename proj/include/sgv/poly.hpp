#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgv/field.hpp"

namespace sgv {

/// Polynomial degree with a minus-infinity value for the zero polynomial, so
/// that max/min/sum over degrees stay total.
class Degree {
 public:
  constexpr Degree(int d) : v_(d) {}  // NOLINT(google-explicit-constructor)
  static constexpr Degree minus_infinity() { return Degree(kNegInf, 0); }

  constexpr bool is_minus_infinity() const noexcept { return v_ == kNegInf; }
  /// Throws Internal when called on minus infinity.
  int value() const;

  friend constexpr bool operator==(Degree a, Degree b) = default;
  friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) { return a.v_ <=> b.v_; }
  friend constexpr Degree operator+(Degree a, Degree b) {
    if (a.is_minus_infinity() || b.is_minus_infinity()) return minus_infinity();
    return Degree(a.v_ + b.v_);
  }
  friend constexpr Degree max(Degree a, Degree b) { return a < b ? b : a; }
  friend constexpr Degree min(Degree a, Degree b) { return a < b ? a : b; }

  std::string to_string() const;

 private:
  static constexpr int kNegInf = -(1 << 30);
  constexpr Degree(int d, int) : v_(d) {}
  int v_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials over a FieldCtx.
// ---------------------------------------------------------------------------

class UniPoly {
 public:
  explicit UniPoly(FieldPtr ctx);
  /// Ascending coefficients; trailing zeros are stripped.
  UniPoly(FieldPtr ctx, std::vector<FieldElem> coeffs);

  static UniPoly from_ints(FieldPtr ctx, const std::vector<std::int64_t>& ascending);
  static UniPoly constant(FieldPtr ctx, const FieldElem& c);
  static UniPoly monomial(FieldPtr ctx, const FieldElem& c, std::size_t n);
  static UniPoly x(FieldPtr ctx);

  const FieldPtr& ctx() const noexcept { return ctx_; }
  const FieldCtx& field() const noexcept { return *ctx_; }

  Degree degree() const noexcept;
  /// Number of stored coefficients: degree + 1, or 0 for the zero polynomial.
  std::size_t size() const noexcept { return c_.size(); }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const;
  FieldElem coeff(std::size_t i) const;
  const std::vector<FieldElem>& coeffs() const noexcept { return c_; }
  /// Leading coefficient; zero for the zero polynomial.
  FieldElem lead() const;

  UniPoly monic() const;
  UniPoly scale(const FieldElem& c) const;
  UniPoly shift(std::size_t n) const;
  UniPoly derivative() const;
  UniPoly pow(std::uint64_t n) const;
  /// this(g(X)).
  UniPoly compose(const UniPoly& g) const;
  FieldElem eval(const FieldElem& x) const;
  /// Maps coefficients into another field, e.g. along an embedding.
  UniPoly map(FieldPtr target, const std::function<FieldElem(const FieldElem&)>& f) const;

  std::string to_string(char var = 'x') const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b);

 private:
  void strip();
  FieldPtr ctx_;
  std::vector<FieldElem> c_;
};

/// Quotient and remainder; throws ZeroPolynomial on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);

/// Monic gcd. Throws BothZero / CtxMismatch.
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

struct ExtendedGcd {
  UniPoly g, s, t;  // s*a + t*b = g, g monic
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m);
UniPoly powmod(const UniPoly& base, const BigInt& e, const UniPoly& m);

/// Degree first, then coefficients from the highest power down.
bool lex_less(const UniPoly& a, const UniPoly& b);

void check_same_ctx(const FieldPtr& a, const FieldPtr& b);

// ---------------------------------------------------------------------------
// Bivariate polynomials: sparse map (i, j) -> coefficient of X^i Y^j.
// ---------------------------------------------------------------------------

class BiPoly {
 public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, FieldElem>;

  explicit BiPoly(FieldPtr ctx);
  BiPoly(FieldPtr ctx, Terms terms);

  static BiPoly from_x(const UniPoly& f);
  static BiPoly from_y(const UniPoly& f);
  static BiPoly constant(FieldPtr ctx, const FieldElem& c);
  /// coeffs[j] is the coefficient of Y^j, a polynomial in X.
  static BiPoly from_coeffs_in_y(FieldPtr ctx, const std::vector<UniPoly>& coeffs);
  static BiPoly from_coeffs_in_x(FieldPtr ctx, const std::vector<UniPoly>& coeffs);

  const FieldPtr& ctx() const noexcept { return ctx_; }
  const FieldCtx& field() const noexcept { return *ctx_; }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Degree deg_x() const noexcept { return deg_x_; }
  Degree deg_y() const noexcept { return deg_y_; }
  Degree total_degree() const noexcept { return total_; }
  FieldElem coeff(int i, int j) const;

  /// Coefficient of Y^j as a polynomial in X, for j = 0..deg_y.
  std::vector<UniPoly> coeffs_in_y() const;
  /// Coefficient of X^i as a polynomial in Y, for i = 0..deg_x.
  std::vector<UniPoly> coeffs_in_x() const;

  /// Leading term in graded order (total degree, then X-degree).
  FieldElem leading_coeff() const;
  BiPoly monic() const;
  BiPoly scale(const FieldElem& c) const;
  BiPoly swap_xy() const;
  BiPoly partial_x() const;
  BiPoly partial_y() const;
  /// F(X + a, Y).
  BiPoly shift_x(const FieldElem& a) const;
  /// F(a, Y) as a polynomial in Y.
  UniPoly specialize_x(const FieldElem& a) const;
  BiPoly pow(std::uint64_t n) const;
  BiPoly map(FieldPtr target, const std::function<FieldElem(const FieldElem&)>& f) const;

  std::string to_string() const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b);

 private:
  void refresh();
  FieldPtr ctx_;
  Terms terms_;
  Degree deg_x_ = Degree::minus_infinity();
  Degree deg_y_ = Degree::minus_infinity();
  Degree total_ = Degree::minus_infinity();
};

/// Exact evaluation, Horner in Y over Horner-in-X coefficients.
FieldElem bipoly_eval(const BiPoly& f, const FieldElem& x, const FieldElem& y);

/// a / b when b divides a exactly in K[X, Y]; nullopt otherwise.
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);

/// gcd of the Y-coefficients (a polynomial in X), monic; zero for F = 0.
UniPoly content_in_x(const BiPoly& f);
/// gcd of the X-coefficients (a polynomial in Y), monic.
UniPoly content_in_y(const BiPoly& f);

/// Greatest common divisor in K[X, Y], normalized by BiPoly::monic.
BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b);

/// Total order used to sort factor lists reproducibly.
bool lex_less(const BiPoly& a, const BiPoly& b);

// ---------------------------------------------------------------------------
// Rational functions f/g with gcd(f, g) = 1 and g monic.
// ---------------------------------------------------------------------------

class RationalFunc {
 public:
  /// Normalizes: removes the common factor and makes the denominator monic.
  RationalFunc(UniPoly num, UniPoly den);
  static RationalFunc polynomial(UniPoly f);

  const UniPoly& num() const noexcept { return num_; }
  const UniPoly& den() const noexcept { return den_; }
  const FieldPtr& ctx() const noexcept { return num_.ctx(); }

  Degree d() const noexcept { return num_.degree(); }
  Degree e() const noexcept { return den_.degree(); }
  Degree l() const noexcept { return min(d(), e()); }
  Degree m() const noexcept { return max(d(), e()); }
  /// deg psi = max(deg f, deg g).
  Degree D() const noexcept { return m(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  RationalFunc scale(const FieldElem& c) const;
  RationalFunc pow(std::uint64_t n) const;
  std::optional<FieldElem> try_eval(const FieldElem& x) const;

  std::string to_string(char var = 'x') const;

  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  UniPoly num_, den_;
};

RationalFunc rational_normalize(const UniPoly& f, const UniPoly& g);
/// R(F(X)); verifies deg(R o F) = deg R * deg F.
RationalFunc rational_compose(const RationalFunc& r, const RationalFunc& f);
/// f(x)/g(x); throws PoleAt when g(x) = 0.
FieldElem rational_eval(const RationalFunc& psi, const FieldElem& x);

}  // namespace sgv
