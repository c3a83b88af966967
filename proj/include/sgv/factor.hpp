#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sgv/poly.hpp"

namespace sgv {

/// unit * prod factor^mult, factors monic, irreducible, distinct and sorted.
struct FactorMultiset {
  FieldElem unit;
  std::vector<std::pair<UniPoly, int>> factors;

  UniPoly expand(const FieldPtr& ctx) const;
  bool is_irreducible() const { return factors.size() == 1 && factors[0].second == 1; }
};

FactorMultiset factor_univariate(const UniPoly& f);
/// Same, after checking that f lives in ctx.
FactorMultiset factor_univariate(const UniPoly& f, const FieldPtr& ctx);

/// Squarefree parts of a nonzero f: pairs (z_i, i) with f = lc * prod z_i^i,
/// each z_i monic, squarefree and nonconstant.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f);

/// Distinct roots in the field of f, ascending.
std::vector<FieldElem> roots(const UniPoly& f);

/// Ring embedding F_{p^a} -> F_{p^b} for a | b, sending the source generator
/// to the smallest root of the source modulus in the target.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to);

  const FieldPtr& from() const noexcept { return from_; }
  const FieldPtr& to() const noexcept { return to_; }

  FieldElem apply(const FieldElem& x) const;
  /// Inverse on the image; nullopt when y is not in the image.
  std::optional<FieldElem> preimage(const FieldElem& y) const;

  UniPoly apply(const UniPoly& f) const;
  BiPoly apply(const BiPoly& f) const;
  std::optional<BiPoly> preimage(const BiPoly& f) const;

 private:
  FieldPtr from_, to_;
  std::vector<FieldElem> powers_;  // images of generator^i, i < deg(from)
};

/// A univariate divisor of a bivariate polynomial.
struct UnivariateDivisor {
  UniPoly poly;
  char variable;  // 'x' or 'y'

  BiPoly as_bipoly() const;
};

/// Nonconstant divisor lying in K[X] or K[Y], if any. Throws ZeroPolynomial.
std::optional<UnivariateDivisor> univariate_factor_of(const BiPoly& f);

struct BiFactorization {
  FieldElem unit;
  std::vector<std::pair<BiPoly, int>> factors;  // monic (graded), sorted

  BiPoly expand(const FieldPtr& ctx) const;
};

/// Complete factorization over the coefficient field of f.
/// Requires 1 <= total degree <= 8 and p > total degree.
BiFactorization factor_bivariate(const BiPoly& f);

/// True iff f has no nontrivial factorization over ctx. ctx may be an
/// extension of f's field, in which case f is embedded first.
bool is_irreducible_bivariate(const BiPoly& f, const FieldPtr& ctx);

struct IrreducibilityVerdict {
  bool over_base = false;
  bool absolutely = false;
  std::optional<BiPoly> witness;
  FieldPtr witness_field;
  /// Degree over F_p of the field where the witness was found.
  int witness_degree = 0;
};

/// Tests f over F_{q^r} for each r dividing the total degree, in order.
IrreducibilityVerdict is_absolutely_irreducible(const BiPoly& f);
/// Same, after checking that f has characteristic p.
IrreducibilityVerdict is_absolutely_irreducible(const BiPoly& f, std::uint64_t p);

/// Largest n with psi = phi^n over the closure. Throws ConstantFunction.
int perfect_power_exponent(const RationalFunc& psi);

struct PerfectPowerRoot {
  int n;
  /// phi with phi^n = psi; lives in an extension when the leading scalar of
  /// psi has no n-th root in the base field.
  RationalFunc phi;
};
PerfectPowerRoot perfect_power_root(const RationalFunc& psi);

}  // namespace sgv
