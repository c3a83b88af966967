#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sgv/poly.hpp"

namespace sgv {

/// psi = f/g over F_p evaluated on plain residues.
class ResidueEvaluator {
 public:
  explicit ResidueEvaluator(const RationalFunc& psi);

  std::uint64_t p() const noexcept { return p_; }
  /// nullopt at a pole.
  std::optional<Residue> operator()(Residue x) const;
  Residue num(Residue x) const { return horner(num_, x); }
  Residue den(Residue x) const { return horner(den_, x); }

 private:
  Residue horner(const std::vector<Residue>& c, Residue x) const;

  std::uint64_t p_;
  std::vector<Residue> num_, den_;
};

struct Subgroup {
  std::uint64_t p = 0;
  std::uint64_t T = 0;
  Residue generator = 1;

  bool contains(Residue y) const;
  /// Ascending.
  std::vector<Residue> elements() const;
};

Residue smallest_primitive_root(std::uint64_t p);
/// Throws NotPrime, OrderDoesNotDivide.
Subgroup subgroup_of_order(std::uint64_t p, std::uint64_t T);

/// {u+1, ..., u+H}. Without wrap the elements are the integers themselves and
/// must lie in [0, p); with wrap they are taken mod p.
struct Interval {
  std::int64_t u = 0;
  std::uint64_t H = 1;
  bool wrap = false;

  /// Closed range a..b.
  static Interval closed(std::int64_t a, std::int64_t b, bool wrap = false);
  /// Throws BadRange.
  void check(std::uint64_t p) const;
  std::vector<Residue> elements(std::uint64_t p) const;
};

struct SubgroupCount {
  std::uint64_t N = 0;
  std::vector<Residue> witnesses;
};

/// x in I with g(x) != 0 and psi(x) in G.
SubgroupCount count_values_in_subgroup(const RationalFunc& psi, const Interval& I, const Subgroup& G);

/// #(psi(S) intersect T) as sets.
std::uint64_t count_value_set_intersection(const RationalFunc& psi, const std::vector<Residue>& S,
                                           const std::vector<Residue>& T);

struct CoveringInterval {
  std::uint64_t K = 0;
  /// A window {u+1..u+H} attaining K and the covering {v+1..v+K}.
  std::int64_t u = 0;
  std::int64_t v = 0;
  bool wrap = false;
};

/// Shortest K such that some H consecutive values of f fit in an interval of
/// length K. Windows containing a pole are skipped.
CoveringInterval shortest_covering_interval(const RationalFunc& f, std::uint64_t H, std::uint64_t p, bool wrap = false);

inline constexpr std::uint64_t kVinogradovBudget = 1'000'000'000;

/// Solutions of x_1^v + ... + x_k^v = x_{k+1}^v + ... + x_{2k}^v, v = 1..d,
/// with 1 <= x_i <= H. Meet in the middle over power-sum signatures; the
/// budget caps d * k * H^k signature work.
BigInt vinogradov_count(int d, int k, std::uint64_t H, std::uint64_t budget = kVinogradovBudget);

/// (x, y) in {1..H}^2, no poles, psi(x) = lambda psi(y); sorted.
std::vector<std::pair<std::uint64_t, std::uint64_t>> congruent_pairs(const RationalFunc& psi, const FieldElem& lambda,
                                                                     std::uint64_t H);

/// Integer bivariate polynomial, (i, j) -> coefficient of X^i Y^j.
using IntBiPoly = std::map<std::pair<int, int>, BigInt>;

struct BoxPoints {
  BigInt count;
  int degree = 0;
  /// H^(1/n), for context only.
  double reference = 0;
  /// H^(1/n) exp(12 sqrt(n log H log log H)) when log log H > 0.
  double bombieri_pila = 0;
};

/// (x, y) in [0, H]^2 with F(x, y) = 0. Throws ZeroPolynomial, InvalidArgument.
BoxPoints integral_points_in_box(const IntBiPoly& F, std::uint64_t H);

}  // namespace sgv
