#pragma once

#include <optional>
#include <vector>

#include "sgv/factor.hpp"

namespace sgv {

/// f(X)g(Y) - lambda f(Y)g(X), over lambda's field. Throws ZeroLambda.
BiPoly build_sym_poly(const RationalFunc& psi, const FieldElem& lambda, const FieldPtr& lambda_field);
BiPoly build_sym_poly(const RationalFunc& psi, const FieldElem& lambda);

struct ExceptionalLambda {
  FieldElem lambda;
  FieldPtr lambda_field;
  /// Degree over F_p of the smallest field containing lambda.
  int lambda_degree = 1;
  BiPoly witness;
  BiPoly cofactor;
  FieldPtr witness_field;
  /// Degree over F_p of the field where the witness was found.
  int t = 1;
};

struct LambdaReport {
  RationalFunc psi;
  FieldPtr scanned_field;
  int max_ext = 1;
  std::uint64_t scanned = 0;
  std::vector<ExceptionalLambda> exceptional;
  std::uint64_t bound = 0;  // 4 D^2
};

/// Witness for lambda when the symmetrized polynomial is reducible over the
/// closure; nullopt when it is absolutely irreducible. No hypothesis checks
/// on psi beyond what factoring needs.
std::optional<ExceptionalLambda> exceptional_witness(const RationalFunc& psi, const FieldElem& lambda,
                                                     const FieldPtr& lambda_field);

/// All exceptional lambda in F_{p^t}^*, t = 1..max_ext, ordered by field
/// degree then value. Requires D >= 2 and psi not a perfect power.
LambdaReport exceptional_lambdas(const RationalFunc& psi, std::uint64_t p, int max_ext = 1, unsigned threads = 1);

/// witness * cofactor == build_sym_poly(psi, lambda), embedded as needed.
bool verify_witness(const RationalFunc& psi, const ExceptionalLambda& e);

}  // namespace sgv
