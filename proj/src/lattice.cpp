#include "sgv/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace sgv {

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

BigInt bareiss_det(Matrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Matrix gram(const std::vector<IntVec>& cols) {
  Matrix g(cols.size(), std::vector<BigInt>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = dot(cols[i], cols[j]);
  return g;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Nearest integer to a/b, b > 0, halves rounded up.
BigInt round_div(const BigInt& a, const BigInt& b) { return floor_div(2 * a + b, 2 * b); }

long double to_ld(const BigInt& a) { return a.convert_to<long double>(); }

void axpy(IntVec& y, const BigInt& q, const IntVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

// Fincke-Pohst over an LLL-reduced basis. The floating-point GSO only prunes;
// every leaf is handed back as an exact coefficient vector.
class Enumerator {
 public:
  Enumerator(const LllResult& red, std::uint64_t budget) : red_(red), budget_(budget) {
    const int r = red.basis.rank();
    // Exact GSO data from the integral LLL invariants.
    const auto& cols = red.basis.cols();
    std::vector<BigInt> d(static_cast<std::size_t>(r) + 1);
    Matrix lam(static_cast<std::size_t>(r), std::vector<BigInt>(static_cast<std::size_t>(r)));
    d[0] = 1;
    for (int k = 0; k < r; ++k) {
      for (int j = 0; j <= k; ++j) {
        BigInt u = dot(cols[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(j)]);
        for (int i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
        if (j < k)
          lam[k][j] = u;
        else
          d[k + 1] = u;
      }
    }
    bstar_.resize(static_cast<std::size_t>(r));
    mu_.assign(static_cast<std::size_t>(r), std::vector<long double>(static_cast<std::size_t>(r), 0.0L));
    for (int k = 0; k < r; ++k) {
      bstar_[k] = to_ld(d[k + 1]) / to_ld(d[k]);
      for (int j = 0; j < k; ++j) mu_[k][j] = to_ld(lam[k][j]) / to_ld(d[j + 1]);
    }
    y_.assign(static_cast<std::size_t>(r), 0);
  }

  /// leaf may lower radius2 while the search runs.
  void run(long double& radius2, const std::function<void(const std::vector<std::int64_t>&)>& leaf) {
    radius2_ = &radius2;
    leaf_ = &leaf;
    rec(red_.basis.rank() - 1, 0.0L);
  }

  ShortVector materialize(const std::vector<std::int64_t>& y) const {
    const auto& cols = red_.basis.cols();
    const std::size_t r = cols.size();
    ShortVector out;
    out.vector.assign(cols[0].size(), BigInt(0));
    out.coeffs.assign(r, BigInt(0));
    for (std::size_t k = 0; k < r; ++k) {
      if (y[k] == 0) continue;
      const BigInt yk = y[k];
      for (std::size_t i = 0; i < out.vector.size(); ++i) out.vector[i] += yk * cols[k][i];
      for (std::size_t j = 0; j < r; ++j) out.coeffs[j] += yk * red_.transform[k][j];
    }
    out.norm = inf_norm(out.vector);
    return out;
  }

 private:
  static constexpr long double kMargin = 1e-9L;

  void rec(int i, long double partial) {
    long double center = 0.0L;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < y_.size(); ++j) center -= mu_[j][i] * static_cast<long double>(y_[j]);
    const long double rem = *radius2_ * (1 + kMargin) + kMargin - partial;
    if (rem < 0) return;
    const long double w = std::sqrt(rem / bstar_[i]);
    if (w > 1e15L) fail(ErrorKind::SearchSpaceTooLarge, "enumeration range too wide");
    const auto lo = static_cast<std::int64_t>(std::ceil(center - w));
    const auto hi = static_cast<std::int64_t>(std::floor(center + w));
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++nodes_ > budget_) fail(ErrorKind::SearchSpaceTooLarge, "enumeration exceeded the node budget");
      const long double diff = static_cast<long double>(v) - center;
      const long double np = partial + bstar_[i] * diff * diff;
      if (np > *radius2_ * (1 + kMargin) + kMargin) continue;
      y_[i] = v;
      if (i == 0) {
        if (std::any_of(y_.begin(), y_.end(), [](std::int64_t c) { return c != 0; })) (*leaf_)(y_);
      } else {
        rec(i - 1, np);
      }
    }
    y_[i] = 0;
  }

  const LllResult& red_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<long double> bstar_;
  std::vector<std::vector<long double>> mu_;
  std::vector<std::int64_t> y_;
  long double* radius2_ = nullptr;
  const std::function<void(const std::vector<std::int64_t>&)>* leaf_ = nullptr;
};

BigInt l2_squared(const IntVec& v) { return dot(v, v); }

}  // namespace

LatticeBasis::LatticeBasis(std::vector<IntVec> cols) : cols_(std::move(cols)) {
  if (cols_.empty() || cols_.front().empty()) fail(ErrorKind::InvalidArgument, "basis needs at least one nonempty column");
  for (const auto& c : cols_)
    if (c.size() != cols_.front().size()) fail(ErrorKind::InvalidArgument, "columns have different lengths");
  if (cols_.size() > cols_.front().size() || bareiss_det(gram(cols_)) == 0) {
    fail(ErrorKind::RankDeficient, "basis columns are linearly dependent");
  }
}

LatticeBasis LatticeBasis::from_ints(const std::vector<std::vector<std::int64_t>>& cols) {
  std::vector<IntVec> c;
  for (const auto& col : cols) c.emplace_back(col.begin(), col.end());
  return LatticeBasis(std::move(c));
}

IntVec LatticeBasis::combine(const std::vector<BigInt>& c) const {
  if (c.size() != cols_.size()) fail(ErrorKind::InvalidArgument, "coefficient count does not match rank");
  IntVec out(cols_.front().size(), BigInt(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[k] * cols_[k][i];
  return out;
}

BigInt dot(const IntVec& a, const IntVec& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt inf_norm(const IntVec& v) {
  BigInt m = 0;
  for (const auto& x : v) m = std::max(m, BigInt(abs(x)));
  return m;
}

BigInt gram_determinant(const LatticeBasis& b) { return bareiss_det(gram(b.cols())); }

BigInt integer_root(const BigInt& a, unsigned k) {
  if (a < 0 || k == 0) fail(ErrorKind::InvalidArgument, "integer_root needs a >= 0 and k >= 1");
  if (a < 2 || k == 1) return a;
  BigInt lo = 0, hi = BigInt(1) << (msb(a) / k + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (pow(mid, k) <= a)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

BigInt lattice_volume_exact(const LatticeBasis& b) {
  if (b.rank() == b.dim()) {
    Matrix m(static_cast<std::size_t>(b.dim()), std::vector<BigInt>(static_cast<std::size_t>(b.dim())));
    for (int j = 0; j < b.rank(); ++j)
      for (int i = 0; i < b.dim(); ++i) m[i][j] = b.col(j)[i];
    return abs(bareiss_det(std::move(m)));
  }
  const BigInt g = gram_determinant(b);
  const BigInt r = integer_root(g, 2);
  return r * r == g ? r : BigInt(-1);
}

double lattice_volume(const LatticeBasis& b) {
  const BigInt exact = lattice_volume_exact(b);
  if (exact >= 0) return exact.convert_to<double>();
  return static_cast<double>(std::sqrt(to_ld(gram_determinant(b))));
}

LllResult lll_reduce(const LatticeBasis& basis) {
  const int n = basis.rank();
  std::vector<IntVec> b = basis.cols();
  Matrix h(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
  for (int i = 0; i < n; ++i) h[i][i] = 1;
  // d[i] = Gram determinant of the first i vectors; lam[k][j] = d[j+1] * mu_kj.
  std::vector<BigInt> d(static_cast<std::size_t>(n) + 1);
  Matrix lam(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);

  auto redi = [&](int k, int l) {
    if (abs(2 * lam[k][l]) <= d[l + 1]) return;
    const BigInt q = round_div(lam[k][l], d[l + 1]);
    axpy(b[k], q, b[l]);
    axpy(h[k], q, h[l]);
    lam[k][l] -= q * d[l + 1];
    for (int i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };
  int kmax = 0;
  auto swapi = [&](int k) {
    std::swap(b[k], b[k - 1]);
    std::swap(h[k], h[k - 1]);
    for (int j = 0; j < k - 1; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    const BigInt l = lam[k][k - 1];
    const BigInt bb = (d[k - 1] * d[k + 1] + l * l) / d[k];
    for (int i = k + 1; i <= kmax; ++i) {
      const BigInt t = lam[i][k];
      lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * t) / d[k];
      lam[i][k - 1] = (bb * t + l * lam[i][k]) / d[k + 1];
    }
    d[k] = bb;
  };

  int k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 0; j <= k; ++j) {
        BigInt u = dot(b[k], b[j]);
        for (int i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
        if (j < k)
          lam[k][j] = u;
        else
          d[k + 1] = u;
      }
      if (d[k + 1] == 0) fail(ErrorKind::RankDeficient, "basis columns are linearly dependent");
    }
    redi(k, k - 1);
    if (4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
      swapi(k);
      k = std::max(1, k - 1);
    } else {
      for (int l = k - 2; l >= 0; --l) redi(k, l);
      ++k;
    }
  }
  return LllResult{LatticeBasis(std::move(b)), std::move(h)};
}

bool shorter(const ShortVector& a, const ShortVector& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  const BigInt la = l2_squared(a.vector), lb = l2_squared(b.vector);
  if (la != lb) return la < lb;
  return std::lexicographical_compare(b.coeffs.begin(), b.coeffs.end(), a.coeffs.begin(), a.coeffs.end());
}

ShortVector shortest_vector_enum(const LatticeBasis& b, std::uint64_t node_budget) {
  if (b.rank() > kMaxEnumRank) {
    fail(ErrorKind::SearchSpaceTooLarge, "rank " + std::to_string(b.rank()) + " exceeds the enumeration limit of " +
                                             std::to_string(kMaxEnumRank));
  }
  const LllResult red = lll_reduce(b);
  // Minkowski: some nonzero vector has infinity norm <= vol^(1/r).
  BigInt radius = integer_root(gram_determinant(b), 2 * static_cast<unsigned>(b.rank()));
  for (const auto& c : red.basis.cols()) radius = std::min(radius, inf_norm(c));
  const long double s = b.dim();
  long double r2 = s * to_ld(radius) * to_ld(radius);

  Enumerator en(red, node_budget);
  std::optional<ShortVector> best;
  en.run(r2, [&](const std::vector<std::int64_t>& y) {
    ShortVector cand = en.materialize(y);
    if (cand.norm > radius) return;
    if (!best || shorter(cand, *best)) {
      radius = cand.norm;
      r2 = s * to_ld(radius) * to_ld(radius);
      best = std::move(cand);
    }
  });
  if (!best) fail(ErrorKind::Internal, "enumeration missed every vector inside the search radius");
  return *best;
}

void enumerate_within(const LatticeBasis& b, const BigInt& radius, const std::function<void(const ShortVector&)>& visit,
                      std::uint64_t node_budget) {
  if (b.rank() > kMaxEnumRank) fail(ErrorKind::SearchSpaceTooLarge, "rank exceeds the enumeration limit");
  if (radius < 0) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const LllResult red = lll_reduce(b);
  long double r2 = static_cast<long double>(b.dim()) * to_ld(radius) * to_ld(radius);
  Enumerator en(red, node_budget);
  en.run(r2, [&](const std::vector<std::int64_t>& y) {
    ShortVector v = en.materialize(y);
    if (v.norm <= radius) visit(v);
  });
}

// ---------------------------------------------------------------------------

SmallResidueInstance SmallResidueInstance::from_reals(std::uint64_t p, std::vector<std::int64_t> b,
                                                      const std::vector<double>& V) {
  SmallResidueInstance inst;
  inst.p = p;
  inst.b = std::move(b);
  for (double x : V) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "bounds must be finite");
    inst.V.emplace_back(x);
  }
  return inst;
}

std::vector<std::uint64_t> SmallResidueInstance::floor_bounds() const {
  std::vector<std::uint64_t> out;
  for (const auto& v : V) {
    if (v < 0) fail(ErrorKind::PreconditionViolated, "bounds must be nonnegative");
    const BigInt f = numerator(v) / denominator(v);
    out.push_back(f > BigInt(p) ? p : f.convert_to<std::uint64_t>());
  }
  return out;
}

std::string SmallResidueInstance::describe() const {
  std::ostringstream os;
  os << "p=" << p << " b=(";
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
  os << ") V=(";
  for (std::size_t i = 0; i < V.size(); ++i) os << (i ? "," : "") << V[i];
  os << ")";
  return os.str();
}

void SmallResidueInstance::check() const {
  if (p >= (1ULL << 32) || !is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not a prime below 2^32");
  if (b.empty() || b.size() != V.size()) fail(ErrorKind::InvalidArgument, "b and V must be nonempty and of equal length");
  Rational prod = 1;
  for (std::size_t i = 0; i < V.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    if (V[i] < 1) fail(ErrorKind::PreconditionViolated, "V_" + idx + " >= 1 fails: V_" + idx + " = " + V[i].str());
    if (V[i] >= Rational(p)) {
      fail(ErrorKind::PreconditionViolated, "p > V_" + idx + " fails: " + std::to_string(p) + " <= " + V[i].str());
    }
    prod *= V[i];
  }
  const BigInt bound = pow(BigInt(p), static_cast<unsigned>(V.size() - 1));
  if (prod <= Rational(bound)) {
    fail(ErrorKind::PreconditionViolated,
         "V_1...V_s > p^(s-1) fails: " + prod.str() + " <= " + bound.str());
  }
}

bool SmallResidueInstance::satisfied_by(std::uint64_t v) const {
  if (v % p == 0) return false;
  const auto f = floor_bounds();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Residue x = mul_mod(reduce(b[i], p), v % p, p);
    if (std::min(x, p - x) > f[i]) return false;
  }
  return true;
}

RedBasis build_red_basis(const SmallResidueInstance& inst) {
  inst.check();
  const std::uint64_t p = inst.p;
  const std::size_t s = inst.b.size();
  const Residue b1 = reduce(inst.b[0], p);
  if (b1 == 0) fail(ErrorKind::PreconditionViolated, "b_1 must be invertible mod p");
  const Residue inv = mod_inverse(static_cast<std::int64_t>(b1), p);
  std::vector<Residue> nb(s);
  for (std::size_t i = 0; i < s; ++i) nb[i] = mul_mod(reduce(inst.b[i], p), inv, p);

  // V_i = a_i / Q; A_i = prod_{j != i} a_j = Q^(s-1) V / V_i.
  BigInt q = 1;
  for (const auto& v : inst.V) q = lcm(q, BigInt(denominator(v)));
  std::vector<BigInt> a(s), A(s, BigInt(1));
  for (std::size_t i = 0; i < s; ++i) a[i] = numerator(inst.V[i]) * (q / denominator(inst.V[i]));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (j != i) A[i] *= a[j];

  // Row k (k < s-1) carries b_{s-k}; the last row carries V/V_1.
  std::vector<IntVec> cols(s, IntVec(s, BigInt(0)));
  for (std::size_t k = 0; k + 1 < s; ++k) {
    const std::size_t i = s - 1 - k;
    cols[0][k] = BigInt(nb[i]) * A[i];
    cols[k + 1][k] = BigInt(p) * A[i];
  }
  cols[0][s - 1] = A[0];
  return RedBasis{LatticeBasis(std::move(cols)), pow(q, static_cast<unsigned>(s - 1)), std::move(nb)};
}

std::string_view to_string(MultiplierMethod m) {
  switch (m) {
    case MultiplierMethod::Trivial: return "trivial";
    case MultiplierMethod::ShortestVector: return "shortest-vector";
    case MultiplierMethod::NextVector: return "next-vector";
    case MultiplierMethod::Scan: return "scan";
  }
  return "?";
}

std::uint64_t scan_small_residue_multiplier(const SmallResidueInstance& inst) {
  for (std::uint64_t v = 1; v < inst.p; ++v)
    if (inst.satisfied_by(v)) return v;
  return 0;
}

MultiplierResult find_small_residue_multiplier(const SmallResidueInstance& inst) {
  inst.check();
  const std::uint64_t p = inst.p;
  auto scan_or_fail = [&](const std::string& why) {
    if (p <= kScanLimit) {
      const std::uint64_t v = scan_small_residue_multiplier(inst);
      if (v) return MultiplierResult{v, MultiplierMethod::Scan, {}, 0};
    }
    fail(ErrorKind::NotFound, "no multiplier found (" + why + ") for " + inst.describe());
  };
  if (inst.s() > kMaxEnumRank) {
    if (p > kScanLimit) fail(ErrorKind::Unsupported, "s > " + std::to_string(kMaxEnumRank) + " needs p <= 10^6");
    return scan_or_fail("scan");
  }
  if (inst.satisfied_by(1)) return MultiplierResult{1, MultiplierMethod::Trivial, {}, 0};
  const auto lead = std::find_if(inst.b.begin(), inst.b.end(), [p](std::int64_t x) { return reduce(x, p) != 0; });
  if (lead == inst.b.end()) return MultiplierResult{1, MultiplierMethod::Trivial, {}, 0};

  SmallResidueInstance perm = inst;
  const auto at = static_cast<std::size_t>(lead - inst.b.begin());
  std::swap(perm.b[0], perm.b[at]);
  std::swap(perm.V[0], perm.V[at]);
  const RedBasis rb = build_red_basis(perm);
  const Residue inv = mod_inverse(perm.b[0], p);
  auto multiplier_of = [&](const ShortVector& sv) -> std::uint64_t {
    const Residue c1 = reduce(sv.coeffs[0], p);
    if (c1 == 0) return 0;
    const std::uint64_t v = mul_mod(c1, inv, p);
    return inst.satisfied_by(v) ? v : 0;
  };

  const ShortVector sv = shortest_vector_enum(rb.basis);
  if (const auto v = multiplier_of(sv)) return MultiplierResult{v, MultiplierMethod::ShortestVector, sv.vector, sv.norm};

  try {
    const BigInt radius = integer_root(gram_determinant(rb.basis), 2 * static_cast<unsigned>(perm.s()));
    std::vector<ShortVector> all;
    enumerate_within(rb.basis, std::max(radius, sv.norm), [&](const ShortVector& x) { all.push_back(x); });
    std::sort(all.begin(), all.end(), shorter);
    for (const auto& x : all)
      if (const auto v = multiplier_of(x)) return MultiplierResult{v, MultiplierMethod::NextVector, x.vector, x.norm};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SearchSpaceTooLarge) throw;
  }
  return scan_or_fail("short vectors gave no valid multiplier");
}

}  // namespace sgv
