#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgv/counting.hpp"
#include "sgv/lattice.hpp"
#include "sgv/poly.hpp"

namespace sgv {

struct ExponentSet {
  int l = 0, m = 0;
  int k = 0, s = 0;
  Rational theta, rho, tau;
};

/// Throws DegenerateDegrees for d = e = 0, InvalidArgument for negatives.
ExponentSet exponent_set(int d, int e);

using IndexPair = std::pair<int, int>;

/// {(i, j) : 0 <= i, j <= m, i + j >= 1, min(i, j) <= l}, in lex order.
/// Re-derives the size and weight identities on every call.
std::vector<IndexPair> support_set(int l, int m);

struct LevelSelection {
  /// Dyadic approximation of (2 p^(s-1) H^k)^(1/s), relative error < 2^-40.
  Rational U;
  double U_real = 0;
  /// V_ij = U / H^(i+j), except the pair of largest weight, which absorbs the
  /// rounding so that the product is exact.
  std::map<IndexPair, Rational> levels;
  Rational product;
};

/// Throws BadRange for H < 2, WindowEmpty naming the failed inequality.
LevelSelection select_test_levels(std::uint64_t p, std::uint64_t H, const ExponentSet& exp);

/// H <= c p^(2 theta / (2 rho - 1)) solved for c; nullopt when 2 rho <= 1.
std::optional<double> effective_c(const ExponentSet& exp, std::uint64_t p, std::uint64_t H);

/// C (1 + H^rho p^-theta) H^tau sqrt(T).
double theorem_bound(const ExponentSet& exp, std::uint64_t p, std::uint64_t H, std::uint64_t T, double C = 1.0);

enum class BoundVariant { Paper, Rederived };

/// min{H^(2 - 2 tau), H^(a - 2 rho - 2 tau) p^(2 theta)} with a = 1 (Paper)
/// or a = 2 (Rederived).
double subgroup_order_lower_bound(const ExponentSet& exp, std::uint64_t H, std::uint64_t p, BoundVariant variant);

struct ReducedPower {
  RationalFunc phi;
  std::uint64_t T0 = 0;
  int n = 1;
};
ReducedPower reduce_perfect_power(const RationalFunc& psi, std::uint64_t T);

/// lambda in F_p^* making f(X)g(Y) - lambda f(Y)g(X) reducible over the
/// closure, ascending.
std::vector<Residue> exceptional_residues(const RationalFunc& psi);

struct TraceOptions {
  /// The interval is {u+1, ..., u+H}.
  std::int64_t u = 0;
  /// Precomputed exceptional_residues(psi); it is shift invariant.
  std::optional<std::vector<Residue>> lambda_set;
};

struct CongruentSolution {
  std::uint64_t x = 0, y = 0;
  BigInt z;
};

struct ProofTrace {
  ProofTrace(RationalFunc psi_, RationalFunc shifted_) : psi(std::move(psi_)), shifted(std::move(shifted_)) {}

  std::uint64_t p = 0, H = 0, T = 0;
  std::int64_t u = 0;
  RationalFunc psi;
  /// psi(X + u), so that the interval becomes {1..H}.
  RationalFunc shifted;
  ExponentSet exponents;

  /// In shifted coordinates.
  std::vector<Residue> witnesses;
  std::uint64_t N = 0;

  std::vector<Residue> lambda_set;
  Residue lambda = 0;
  /// Witness pairs (x, y) with psi(x) = lambda psi(y).
  std::uint64_t pair_count = 0;
  Rational pair_lower_bound;
  bool pair_bound_met = false;
  /// r > 8 m^3, the regime where the counting argument has content.
  bool large_r = false;

  std::vector<IndexPair> support;
  std::vector<Residue> b;
  LevelSelection levels;
  MultiplierResult multiplier;

  IntBiPoly F, G;
  /// Every (x, y) in {1..H}^2 with psi(x) = lambda psi(y), with its z.
  std::vector<CongruentSolution> solutions;
  /// floor(sum |F_ij - G_ij| H^(i+j) / p); every |z| is at most this.
  BigInt z_max;
  std::map<BigInt, std::uint64_t> z_counts;
  /// p^(-1/s) H^(k/s) + 1.
  double proof_magnitude = 0;

  double bound = 0;
  double ratio = 0;
  bool verified = false;
};

/// Throws PerfectPowerInput, FieldMismatch, OrderDoesNotDivide, BadRange,
/// WindowEmpty, LambdaSetExhausted.
ProofTrace trace_proof(const RationalFunc& psi, std::uint64_t p, std::uint64_t H, std::uint64_t T,
                       const TraceOptions& options = {});

/// Evaluates an integer bivariate polynomial at (x, y).
BigInt eval_int_bipoly(const IntBiPoly& F, const BigInt& x, const BigInt& y);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepCell {
  std::uint64_t p = 0;
  std::string psi;
  std::uint64_t H = 0;
  std::uint64_t T = 0;
  std::int64_t u = 0;
};

enum class RowStatus { Ok, WindowEmpty, PerfectPower, Error };
std::string_view to_string(RowStatus s);

struct ReportRow {
  std::uint64_t p = 0;
  int d = -1, e = -1;
  std::uint64_t H = 0, T = 0;
  std::int64_t u = 0;
  std::optional<std::uint64_t> N;
  std::optional<double> bound;
  std::optional<double> ratio;
  std::optional<std::uint64_t> lambda_count;
  RowStatus status = RowStatus::Error;
  std::string error;
  std::string psi;
};

/// One row per cell; per-cell failures land in the row. Rows are sorted by
/// (p, d, e, H, T, u, psi), so the output does not depend on threads.
std::vector<ReportRow> run_sweep(const std::vector<SweepCell>& cells, unsigned threads = 1);

}  // namespace sgv
