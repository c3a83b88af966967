#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sgv/field.hpp"

namespace sgv {

using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<BigInt>;

/// r linearly independent integer columns in Z^s, r <= s.
class LatticeBasis {
 public:
  /// Throws RankDeficient on dependent columns, InvalidArgument on ragged or
  /// empty input.
  explicit LatticeBasis(std::vector<IntVec> cols);
  static LatticeBasis from_ints(const std::vector<std::vector<std::int64_t>>& cols);

  int rank() const noexcept { return static_cast<int>(cols_.size()); }
  int dim() const noexcept { return static_cast<int>(cols_.front().size()); }
  const std::vector<IntVec>& cols() const noexcept { return cols_; }
  const IntVec& col(int i) const { return cols_.at(static_cast<std::size_t>(i)); }

  /// sum_i c_i * col_i
  IntVec combine(const std::vector<BigInt>& c) const;

 private:
  std::vector<IntVec> cols_;
};

BigInt dot(const IntVec& a, const IntVec& b);
BigInt inf_norm(const IntVec& v);

/// det(B^t B), exact.
BigInt gram_determinant(const LatticeBasis& b);
/// |det B| when r = s; otherwise the square root of the Gram determinant when
/// it is a perfect square, else -1.
BigInt lattice_volume_exact(const LatticeBasis& b);
double lattice_volume(const LatticeBasis& b);

/// floor(a^(1/k)) for a >= 0.
BigInt integer_root(const BigInt& a, unsigned k);

struct LllResult {
  LatticeBasis basis;
  /// basis.col(k) = sum_j transform[k][j] * original.col(j)
  std::vector<std::vector<BigInt>> transform;
};

/// Exact integral LLL with delta = 3/4.
LllResult lll_reduce(const LatticeBasis& b);

struct ShortVector {
  IntVec vector;
  /// Coefficients with respect to the input basis.
  std::vector<BigInt> coeffs;
  BigInt norm;  // infinity norm
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr int kMaxEnumRank = 6;

/// Nonzero lattice vector of least infinity norm. Ties go to the smaller
/// Euclidean length, then to the lexicographically greatest coefficient
/// vector, which makes the answer independent of the sign ambiguity.
ShortVector shortest_vector_enum(const LatticeBasis& b, std::uint64_t node_budget = kDefaultNodeBudget);

/// Calls visit for every nonzero lattice vector with infinity norm <= radius.
/// Order is unspecified.
void enumerate_within(const LatticeBasis& b, const BigInt& radius, const std::function<void(const ShortVector&)>& visit,
                      std::uint64_t node_budget = kDefaultNodeBudget);

/// Strict weak order used by shortest_vector_enum.
bool shorter(const ShortVector& a, const ShortVector& b);

// ---------------------------------------------------------------------------
// Small residues of b_i v modulo p
// ---------------------------------------------------------------------------

struct SmallResidueInstance {
  std::uint64_t p = 0;
  std::vector<std::int64_t> b;
  std::vector<Rational> V;

  static SmallResidueInstance from_reals(std::uint64_t p, std::vector<std::int64_t> b, const std::vector<double>& V);

  int s() const noexcept { return static_cast<int>(b.size()); }
  /// floor(V_i); the residues are integers so this is what gets compared.
  std::vector<std::uint64_t> floor_bounds() const;
  /// Throws PreconditionViolated naming the failing inequality.
  void check() const;
  bool satisfied_by(std::uint64_t v) const;
  std::string describe() const;
};

struct RedBasis {
  LatticeBasis basis;
  /// Every entry is scale times the rational entry it stands for.
  BigInt scale;
  /// b_i / b_1 mod p
  std::vector<Residue> normalized_b;
};

/// Requires b_1 invertible mod p.
RedBasis build_red_basis(const SmallResidueInstance& inst);

enum class MultiplierMethod { Trivial, ShortestVector, NextVector, Scan };
std::string_view to_string(MultiplierMethod m);

struct MultiplierResult {
  std::uint64_t v = 0;
  MultiplierMethod method = MultiplierMethod::ShortestVector;
  /// Empty for Trivial and Scan.
  IntVec short_vector;
  BigInt norm;
};

inline constexpr std::uint64_t kScanLimit = 1'000'000;

/// v in [1, p) with <b_i v>_p <= V_i for all i.
MultiplierResult find_small_residue_multiplier(const SmallResidueInstance& inst);

/// Smallest valid v found by direct scan, or 0.
std::uint64_t scan_small_residue_multiplier(const SmallResidueInstance& inst);

}  // namespace sgv
