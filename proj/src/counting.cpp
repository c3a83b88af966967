#include "sgv/counting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

namespace sgv {

namespace {

void require_prime_field(const RationalFunc& psi, std::uint64_t p) {
  if (!psi.ctx()->is_prime_field() || psi.ctx()->characteristic() != p) {
    fail(ErrorKind::FieldMismatch, "psi must be defined over F_" + std::to_string(p));
  }
}

std::vector<Residue> residues(const UniPoly& f) {
  std::vector<Residue> out;
  for (const auto& c : f.coeffs()) out.push_back(c.value());
  return out;
}

// ---- integer roots of a polynomial on [a, b] -------------------------------
// The integer sequence P(a), ..., P(b) splits into monotone runs at the sign
// changes of the forward difference, which is found recursively. Each run then
// has its zeros located by binary search.

template <class T>
int sgn(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <class T>
void trim(std::vector<T>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

template <class T>
T horner(const std::vector<T>& c, std::int64_t y) {
  T acc = 0;
  const T ty = y;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ty + *it;
  return acc;
}

template <class T>
std::vector<T> forward_diff(const std::vector<T>& c) {
  std::vector<T> s = c;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) s[j] += s[j + 1];
  for (std::size_t i = 0; i < n; ++i) s[i] -= c[i];
  trim(s);
  return s;
}

/// First y in [lo, hi] with pred(y), given pred is false then true; hi + 1 if none.
template <class Pred>
std::int64_t first_true(std::int64_t lo, std::int64_t hi, Pred pred) {
  std::int64_t a = lo, b = hi + 1;
  while (a < b) {
    const std::int64_t mid = a + (b - a) / 2;
    if (pred(mid))
      b = mid;
    else
      a = mid + 1;
  }
  return a;
}

template <class T>
std::vector<std::int64_t> monotone_cuts(const std::vector<T>& q, std::int64_t a, std::int64_t b) {
  if (b <= a) return {a};
  if (q.size() <= 2) return {a, b};
  const std::vector<T> d = forward_diff(q);
  const auto dc = monotone_cuts(d, a, b - 1);
  std::vector<std::int64_t> out{a, b};
  auto seg = [&](std::int64_t s, std::int64_t e) {
    for (int target : {1, -1}) {
      const bool at_s = sgn(horner(d, s)) == target, at_e = sgn(horner(d, e)) == target;
      if (!at_s && !at_e) continue;
      const std::int64_t t = at_s ? s : first_true(s + 1, e, [&](std::int64_t y) { return sgn(horner(d, y)) == target; });
      if (t > a && sgn(horner(d, t - 1)) != target) out.push_back(t);
    }
  };
  if (dc.size() == 1) seg(dc[0], dc[0]);
  for (std::size_t i = 0; i + 1 < dc.size(); ++i) seg(dc[i], dc[i + 1]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Integer zeros of a nonzero polynomial in [a, b].
template <class T>
void integer_zeros(const std::vector<T>& q, std::int64_t a, std::int64_t b, std::set<std::int64_t>& out) {
  if (q.size() == 2) {
    // c0 + c1 y = 0
    if (q[0] % q[1] == 0) {
      const T y = -q[0] / q[1];
      if (y >= a && y <= b) out.insert(static_cast<std::int64_t>(y));
    }
    return;
  }
  const auto cuts = monotone_cuts(q, a, b);
  auto run = [&](std::int64_t s, std::int64_t e) {
    const int ss = sgn(horner(q, s)), se = sgn(horner(q, e));
    if (ss == se && ss != 0) return;
    const bool up = horner(q, s) <= horner(q, e);
    const std::int64_t lo = first_true(s, e, [&](std::int64_t y) { return up ? horner(q, y) >= 0 : horner(q, y) <= 0; });
    const std::int64_t hi = first_true(s, e, [&](std::int64_t y) { return up ? horner(q, y) > 0 : horner(q, y) < 0; });
    for (std::int64_t y = lo; y < hi; ++y) out.insert(y);
  };
  if (cuts.size() == 1) run(cuts[0], cuts[0]);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) run(cuts[i], cuts[i + 1]);
}

template <class T>
BigInt count_box_points(const IntBiPoly& F, std::int64_t H, bool swap) {
  int dy = 0;
  for (const auto& [e, c] : F) dy = std::max(dy, swap ? e.first : e.second);
  BigInt total = 0;
  for (std::int64_t x = 0; x <= H; ++x) {
    std::vector<T> q(static_cast<std::size_t>(dy) + 1, T(0));
    for (const auto& [e, c] : F) {
      const int i = swap ? e.second : e.first, j = swap ? e.first : e.second;
      T term = static_cast<T>(c);
      for (int k = 0; k < i; ++k) term *= T(x);
      q[static_cast<std::size_t>(j)] += term;
    }
    trim(q);
    if (q.empty()) {
      total += H + 1;
      continue;
    }
    if (q.size() == 1) continue;
    std::set<std::int64_t> zeros;
    integer_zeros(q, 0, H, zeros);
    total += zeros.size();
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

ResidueEvaluator::ResidueEvaluator(const RationalFunc& psi)
    : p_(psi.ctx()->characteristic()), num_(residues(psi.num())), den_(residues(psi.den())) {
  if (!psi.ctx()->is_prime_field()) fail(ErrorKind::FieldMismatch, "psi must be defined over a prime field");
}

Residue ResidueEvaluator::horner(const std::vector<Residue>& c, Residue x) const {
  Residue acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, p_), *it, p_);
  return acc;
}

std::optional<Residue> ResidueEvaluator::operator()(Residue x) const {
  x %= p_;
  const Residue g = den(x);
  if (g == 0) return std::nullopt;
  return mul_mod(num(x), mod_inverse(static_cast<std::int64_t>(g), p_), p_);
}

bool Subgroup::contains(Residue y) const { return y % p != 0 && pow_mod(y, T, p) == 1; }

std::vector<Residue> Subgroup::elements() const {
  std::vector<Residue> out;
  Residue y = 1;
  for (std::uint64_t i = 0; i < T; ++i) {
    out.push_back(y);
    y = mul_mod(y, generator, p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Residue smallest_primitive_root(std::uint64_t p) {
  if (p >= (1ULL << 32) || !is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto qs = prime_divisors(p - 1);
  for (Residue g = 2;; ++g) {
    if (std::all_of(qs.begin(), qs.end(), [&](std::uint64_t q) { return pow_mod(g, (p - 1) / q, p) != 1; })) return g;
  }
}

Subgroup subgroup_of_order(std::uint64_t p, std::uint64_t T) {
  const Residue g = smallest_primitive_root(p);
  if (T == 0 || (p - 1) % T != 0) {
    fail(ErrorKind::OrderDoesNotDivide, std::to_string(T) + " does not divide " + std::to_string(p - 1));
  }
  return Subgroup{p, T, pow_mod(g, (p - 1) / T, p)};
}

Interval Interval::closed(std::int64_t a, std::int64_t b, bool wrap) {
  if (b < a) fail(ErrorKind::BadRange, "empty range " + std::to_string(a) + ".." + std::to_string(b));
  return Interval{a - 1, static_cast<std::uint64_t>(b - a + 1), wrap};
}

void Interval::check(std::uint64_t p) const {
  if (H < 1) fail(ErrorKind::BadRange, "interval length must be at least 1");
  if (H > p) fail(ErrorKind::BadRange, "interval longer than p");
  if (!wrap && (u < -1 || u + static_cast<std::int64_t>(H) >= static_cast<std::int64_t>(p))) {
    fail(ErrorKind::BadRange, "interval {" + std::to_string(u + 1) + ".." + std::to_string(u + static_cast<std::int64_t>(H)) +
                                  "} leaves [0, " + std::to_string(p) + ") without wrap");
  }
}

std::vector<Residue> Interval::elements(std::uint64_t p) const {
  check(p);
  std::vector<Residue> out;
  out.reserve(H);
  for (std::uint64_t i = 1; i <= H; ++i) out.push_back(reduce(u + static_cast<std::int64_t>(i), p));
  return out;
}

SubgroupCount count_values_in_subgroup(const RationalFunc& psi, const Interval& I, const Subgroup& G) {
  require_prime_field(psi, G.p);
  const ResidueEvaluator ev(psi);
  SubgroupCount out;
  for (Residue x : I.elements(G.p)) {
    const auto y = ev(x);
    if (y && G.contains(*y)) out.witnesses.push_back(x);
  }
  out.N = out.witnesses.size();
  return out;
}

std::uint64_t count_value_set_intersection(const RationalFunc& psi, const std::vector<Residue>& S,
                                           const std::vector<Residue>& T) {
  if (!psi.ctx()->is_prime_field()) fail(ErrorKind::FieldMismatch, "psi must be defined over a prime field");
  const ResidueEvaluator ev(psi);
  const std::uint64_t p = ev.p();
  auto in_range = [p](const std::vector<Residue>& v) { return std::all_of(v.begin(), v.end(), [p](Residue r) { return r < p; }); };
  if (!in_range(S) || !in_range(T)) fail(ErrorKind::InvalidArgument, "set elements must lie in [0, p)");
  std::set<Residue> values;
  for (Residue x : S)
    if (const auto y = ev(x)) values.insert(*y);
  const std::set<Residue> target(T.begin(), T.end());
  std::uint64_t n = 0;
  for (Residue y : values) n += target.count(y);
  return n;
}

CoveringInterval shortest_covering_interval(const RationalFunc& f, std::uint64_t H, std::uint64_t p, bool wrap) {
  require_prime_field(f, p);
  if (H < 1 || H > p) fail(ErrorKind::BadRange, "H must lie in [1, p]");
  const ResidueEvaluator ev(f);
  std::vector<std::optional<Residue>> val(p);
  for (Residue x = 0; x < p; ++x) val[x] = ev(x);
  std::optional<CoveringInterval> best;
  auto offer = [&](std::uint64_t K, std::int64_t u, std::int64_t v) {
    if (!best || K < best->K) best = CoveringInterval{K, u, v, wrap};
  };

  if (!wrap) {
    // Windows {u+1..u+H} within [0, p): sliding min/max.
    std::deque<std::uint64_t> mn, mx;
    std::uint64_t last_pole = 0;
    bool seen_pole = false;
    for (std::uint64_t x = 0; x < p; ++x) {
      if (!val[x]) {
        last_pole = x;
        seen_pole = true;
        mn.clear();
        mx.clear();
      } else {
        while (!mn.empty() && *val[mn.back()] >= *val[x]) mn.pop_back();
        while (!mx.empty() && *val[mx.back()] <= *val[x]) mx.pop_back();
        mn.push_back(x);
        mx.push_back(x);
      }
      if (x + 1 < H) continue;
      const std::uint64_t start = x + 1 - H;
      if (seen_pole && last_pole >= start) continue;
      while (mn.front() < start) mn.pop_front();
      while (mx.front() < start) mx.pop_front();
      const Residue lo = *val[mn.front()], hi = *val[mx.front()];
      offer(hi - lo + 1, static_cast<std::int64_t>(start) - 1, static_cast<std::int64_t>(lo) - 1);
    }
  } else {
    std::vector<Residue> w;
    for (std::uint64_t u = 0; u < p; ++u) {
      w.clear();
      bool pole = false;
      for (std::uint64_t i = 1; i <= H && !pole; ++i) {
        const auto& y = val[(u + i) % p];
        if (!y)
          pole = true;
        else
          w.push_back(*y);
      }
      if (pole) continue;
      std::sort(w.begin(), w.end());
      w.erase(std::unique(w.begin(), w.end()), w.end());
      // The covering arc skips the largest cyclic gap.
      std::uint64_t gap = w.front() + p - w.back();
      Residue start = w.front();
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1] - w[i] > gap) {
          gap = w[i + 1] - w[i];
          start = w[i + 1];
        }
      }
      offer(p - gap + 1, static_cast<std::int64_t>(u), static_cast<std::int64_t>(start) - 1);
    }
  }
  if (!best) fail(ErrorKind::AllWindowsContainPoles, "every window of length " + std::to_string(H) + " contains a pole");
  return *best;
}

BigInt vinogradov_count(int d, int k, std::uint64_t H, std::uint64_t budget) {
  if (d < 1 || k < 1 || H < 1) fail(ErrorKind::InvalidArgument, "d, k and H must be positive");
  // Work: H^k signatures of d power sums each, k terms per sum.
  BigInt tuples = pow(BigInt(H), static_cast<unsigned>(k));
  if (tuples * d * k > budget || tuples > 50'000'000) {
    fail(ErrorKind::BudgetExceeded, "J_{" + std::to_string(d) + "," + std::to_string(k) + "}(" + std::to_string(H) +
                                        ") needs " + BigInt(tuples * d * k).str() + " operations");
  }
  if (BigInt(k) * pow(BigInt(H), static_cast<unsigned>(d)) >= BigInt(1) << 126) {
    fail(ErrorKind::BudgetExceeded, "power sums overflow 128 bits");
  }
  using u128 = unsigned __int128;
  const auto n = tuples.convert_to<std::size_t>();
  const auto dd = static_cast<std::size_t>(d);
  std::vector<u128> sig(n * dd, 0);
  std::vector<std::uint64_t> x(static_cast<std::size_t>(k), 1);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::uint64_t xi : x) {
      u128 pw = 1;
      for (std::size_t v = 0; v < dd; ++v) {
        pw *= xi;
        sig[t * dd + v] += pw;
      }
    }
    for (std::size_t i = 0; i < x.size() && ++x[i] > H; ++i) x[i] = 1;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(sig.begin() + static_cast<std::ptrdiff_t>(a * dd),
                                        sig.begin() + static_cast<std::ptrdiff_t>((a + 1) * dd),
                                        sig.begin() + static_cast<std::ptrdiff_t>(b * dd),
                                        sig.begin() + static_cast<std::ptrdiff_t>((b + 1) * dd));
  };
  std::sort(order.begin(), order.end(), less);
  BigInt total = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && !less(order[i], order[j])) ++j;
    total += BigInt(j - i) * (j - i);
    i = j;
  }
  return total;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> congruent_pairs(const RationalFunc& psi, const FieldElem& lambda,
                                                                     std::uint64_t H) {
  psi.ctx()->check(lambda);
  if (lambda.is_zero()) fail(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const ResidueEvaluator ev(psi);
  const std::uint64_t p = ev.p();
  if (H >= p) fail(ErrorKind::BadRange, "H must be below p");
  std::unordered_map<Residue, std::vector<std::uint64_t>> by_value;
  for (std::uint64_t y = 1; y <= H; ++y)
    if (const auto v = ev(y)) by_value[mul_mod(lambda.value(), *v, p)].push_back(y);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t x = 1; x <= H; ++x) {
    const auto v = ev(x);
    if (!v) continue;
    const auto it = by_value.find(*v);
    if (it == by_value.end()) continue;
    for (std::uint64_t y : it->second) out.emplace_back(x, y);
  }
  return out;
}

BoxPoints integral_points_in_box(const IntBiPoly& F, std::uint64_t H) {
  IntBiPoly f;
  for (const auto& [e, c] : F) {
    if (e.first < 0 || e.second < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
    if (c != 0) f[e] += c;
  }
  for (auto it = f.begin(); it != f.end();) it = it->second == 0 ? f.erase(it) : std::next(it);
  if (f.empty()) fail(ErrorKind::ZeroPolynomial, "F must be nonzero");
  if (H > 1'000'000) fail(ErrorKind::InvalidArgument, "H must be at most 10^6");

  int dx = 0, dy = 0, n = 0;
  BigInt mass = 0;
  for (const auto& [e, c] : f) {
    dx = std::max(dx, e.first);
    dy = std::max(dy, e.second);
    n = std::max(n, e.first + e.second);
    mass += abs(c);
  }
  const bool swap = dy > dx;
  const int inner = std::min(dx, dy);
  // Headroom for Horner and forward differences in 128-bit arithmetic.
  const BigInt bound = mass * (BigInt(1) << inner) * pow(BigInt(H + 1), static_cast<unsigned>(dx + dy));
  BoxPoints out;
  const auto h = static_cast<std::int64_t>(H);
  out.count = bound < (BigInt(1) << 120) ? count_box_points<__int128>(f, h, swap) : count_box_points<BigInt>(f, h, swap);
  out.degree = n;
  if (n > 0 && H > 0) {
    const double lh = std::log(static_cast<double>(H));
    out.reference = std::pow(static_cast<double>(H), 1.0 / n);
    out.bombieri_pila = out.reference;
    if (lh > 1.0) out.bombieri_pila *= std::exp(12.0 * std::sqrt(n * lh * std::log(lh)));
  }
  return out;
}

}  // namespace sgv
