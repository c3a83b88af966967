#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sgv/counting.hpp"

using namespace sgv;

namespace {

UniPoly P(const FieldPtr& k, std::vector<std::int64_t> c) { return UniPoly::from_ints(k, c); }
RationalFunc Poly(const FieldPtr& k, std::vector<std::int64_t> c) { return RationalFunc::polynomial(P(k, std::move(c))); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

std::int64_t ipow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r = md(r * a, p);
  return r;
}

// psi(x) by direct evaluation of integer coefficient lists; -1 at poles.
std::int64_t brute_eval(const std::vector<std::int64_t>& num, const std::vector<std::int64_t>& den, std::int64_t x, std::int64_t p) {
  auto ev = [&](const std::vector<std::int64_t>& c) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s = md(s + md(c[i], p) * ipow(x, static_cast<std::int64_t>(i), p), p);
    return s;
  };
  const std::int64_t g = ev(den);
  if (g == 0) return -1;
  for (std::int64_t inv = 1; inv < p; ++inv)
    if (md(g * inv, p) == 1) return md(ev(num) * inv, p);
  return -1;
}

std::uint64_t brute_K(const std::vector<std::int64_t>& vals, std::int64_t p, std::int64_t H, bool wrap) {
  std::uint64_t best = UINT64_MAX;
  const std::int64_t ustart = wrap ? 0 : -1, uend = wrap ? p - 1 : p - 1 - H;
  for (std::int64_t u = ustart; u <= uend; ++u) {
    std::vector<std::int64_t> w;
    bool pole = false;
    for (std::int64_t i = 1; i <= H; ++i) {
      const std::int64_t y = vals[static_cast<std::size_t>(md(u + i, p))];
      if (y < 0) pole = true;
      w.push_back(y);
    }
    if (pole) continue;
    for (std::int64_t K = 1; K <= p && static_cast<std::uint64_t>(K) < best; ++K) {
      bool found = false;
      for (std::int64_t v = -1; v + K < p + (wrap ? K : 0) && !found; ++v) {
        found = std::all_of(w.begin(), w.end(), [&](std::int64_t y) {
          if (!wrap) return y >= v + 1 && y <= v + K;
          return md(y - (v + 1), p) < K;
        });
      }
      if (found) {
        best = static_cast<std::uint64_t>(K);
        break;
      }
    }
  }
  return best;
}

BigInt brute_vinogradov(int d, int k, std::int64_t H) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(2 * k), 1);
  BigInt n = 0;
  while (true) {
    bool ok = true;
    for (int v = 1; v <= d && ok; ++v) {
      std::int64_t s = 0;
      for (int i = 0; i < 2 * k; ++i) {
        std::int64_t pw = 1;
        for (int e = 0; e < v; ++e) pw *= x[i];
        s += i < k ? pw : -pw;
      }
      ok = s == 0;
    }
    n += ok;
    std::size_t i = 0;
    while (i < x.size() && x[i] == H) x[i++] = 1;
    if (i == x.size()) break;
    ++x[i];
  }
  return n;
}

}  // namespace

TEST_CASE("subgroups") {
  const auto g3 = subgroup_of_order(7, 3);
  CHECK(g3.elements() == std::vector<Residue>{1, 2, 4});
  CHECK(g3.generator == 2);
  CHECK(subgroup_of_order(7, 6).elements() == std::vector<Residue>{1, 2, 3, 4, 5, 6});
  CHECK(kind_of([] { subgroup_of_order(7, 4); }) == ErrorKind::OrderDoesNotDivide);
  CHECK(kind_of([] { subgroup_of_order(6, 1); }) == ErrorKind::NotPrime);
  CHECK(smallest_primitive_root(7) == 3);
  CHECK(smallest_primitive_root(41) == 6);

  for (std::uint64_t p : {2, 3, 13, 31, 61, 101, 257, 1009}) {
    for (std::uint64_t T = 1; T <= p - 1; ++T) {
      if ((p - 1) % T) continue;
      const auto G = subgroup_of_order(p, T);
      const auto el = G.elements();
      CHECK(el.size() == T);
      std::set<Residue> set(el.begin(), el.end());
      CHECK(set.size() == T);
      // Independent description {y : y^T = 1}.
      std::set<Residue> roots;
      for (std::int64_t y = 1; y < static_cast<std::int64_t>(p); ++y)
        if (ipow(y, static_cast<std::int64_t>(T), static_cast<std::int64_t>(p)) == 1) roots.insert(static_cast<Residue>(y));
      CHECK(roots == set);
      for (Residue a : el) {
        CHECK(set.count(mod_inverse(static_cast<std::int64_t>(a), p)) == 1);
        for (Residue b : el) CHECK(set.count(mul_mod(a, b, p)) == 1);
      }
      for (std::uint64_t q : prime_divisors(T)) CHECK(pow_mod(G.generator, T / q, p) != 1);
      if (p > 200) break;
    }
  }
}

TEST_CASE("intervals") {
  const auto I = Interval::closed(1, 6);
  CHECK(I.u == 0);
  CHECK(I.H == 6);
  CHECK(I.elements(7) == std::vector<Residue>{1, 2, 3, 4, 5, 6});
  CHECK(Interval{-1, 3, false}.elements(7) == std::vector<Residue>{0, 1, 2});
  CHECK(Interval{5, 3, true}.elements(7) == std::vector<Residue>{6, 0, 1});
  CHECK(kind_of([] { Interval{5, 3, false}.elements(7); }) == ErrorKind::BadRange);
  CHECK(kind_of([] { Interval{0, 0, false}.elements(7); }) == ErrorKind::BadRange);
  CHECK(kind_of([] { Interval::closed(3, 2); }) == ErrorKind::BadRange);
}

TEST_CASE("values in a subgroup") {
  auto f7 = FieldCtx::prime(7);
  const auto G = subgroup_of_order(7, 3);
  const auto I = Interval::closed(1, 6);
  const auto sq = count_values_in_subgroup(Poly(f7, {0, 0, 1}), I, G);
  CHECK(sq.N == 6);
  CHECK(count_values_in_subgroup(Poly(f7, {0, 0, 0, 1}), I, G).N == 3);
  CHECK(count_values_in_subgroup(Poly(f7, {0, 0, 0, 1}), I, G).witnesses == std::vector<Residue>{1, 2, 4});
  CHECK(count_values_in_subgroup(RationalFunc(P(f7, {1}), P(f7, {0, 1})), I, G).N == 3);
  CHECK(count_value_set_intersection(Poly(f7, {0, 0, 1}), {1, 2, 3, 4, 5, 6}, {1, 2, 4}) == 3);
  CHECK(count_value_set_intersection(Poly(f7, {0, 0, 1}), {}, {1, 2, 4}) == 0);
  CHECK(count_value_set_intersection(Poly(f7, {0, 1}), {0, 3, 5}, {0, 3, 5}) == 3);
  CHECK(kind_of([&] { count_values_in_subgroup(Poly(FieldCtx::prime(11), {0, 0, 1}), I, G); }) == ErrorKind::FieldMismatch);

  std::mt19937_64 rng(3);
  for (std::int64_t p : {13, 31, 61}) {
    auto k = FieldCtx::prime(static_cast<std::uint64_t>(p));
    for (int it = 0; it < 40; ++it) {
      std::vector<std::int64_t> num(1 + rng() % 4), den(1 + rng() % 3);
      for (auto& c : num) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      for (auto& c : den) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      num.back() = 1 + num.back() % (p - 1);
      den.back() = 1 + den.back() % (p - 1);
      const RationalFunc psi(P(k, num), P(k, den));
      std::vector<std::uint64_t> Ts;
      for (std::int64_t T = 1; T < p; ++T)
        if ((p - 1) % T == 0) Ts.push_back(static_cast<std::uint64_t>(T));
      const std::uint64_t T = Ts[rng() % Ts.size()];
      const auto G = subgroup_of_order(static_cast<std::uint64_t>(p), T);
      const std::int64_t H = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - 1));
      const std::int64_t u = -1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - H + 1));
      const auto res = count_values_in_subgroup(psi, Interval{u, static_cast<std::uint64_t>(H), false}, G);
      // Each value has at most D preimages (constants excepted); the value set
      // obeys min(H, T) exactly.
      const auto D = psi.is_constant() ? static_cast<std::uint64_t>(H) : static_cast<std::uint64_t>(psi.D().value());
      CHECK(res.N <= std::min<std::uint64_t>(static_cast<std::uint64_t>(H), D * T));
      const auto Iel = Interval{u, static_cast<std::uint64_t>(H), false}.elements(static_cast<std::uint64_t>(p));
      CHECK(count_value_set_intersection(psi, Iel, G.elements()) <= std::min<std::uint64_t>(static_cast<std::uint64_t>(H), T));
      // Recount from the raw coefficient lists (the normalized psi agrees away
      // from the cancelled common factor, which can only add poles).
      std::uint64_t expect = 0;
      for (std::int64_t x = u + 1; x <= u + H; ++x) {
        const std::int64_t y = brute_eval(num, den, x, p);
        const auto v = psi.try_eval(k->from_int(x));
        if (v && ipow(static_cast<std::int64_t>(v->value()), static_cast<std::int64_t>(T), p) == 1) ++expect;
        if (y >= 0) CHECK((v && static_cast<std::int64_t>(v->value()) == y));
      }
      CHECK(res.N == expect);
      for (Residue x : res.witnesses) {
        const auto v = psi.try_eval(k->from_int(static_cast<std::int64_t>(x)));
        REQUIRE(v);
        CHECK(ipow(static_cast<std::int64_t>(v->value()), static_cast<std::int64_t>(T), p) == 1);
      }
    }
  }
}

TEST_CASE("shortest covering interval") {
  auto f17 = FieldCtx::prime(17), f7 = FieldCtx::prime(7), f11 = FieldCtx::prime(11);
  const auto c = shortest_covering_interval(Poly(f17, {0, 0, 1}), 2, 17);
  CHECK(c.K == 1);
  CHECK(shortest_covering_interval(Poly(f7, {0, 0, 1}), 2, 7).K == 1);
  CHECK(shortest_covering_interval(Poly(f11, {0, 1}), 3, 11).K == 3);
  CHECK(shortest_covering_interval(Poly(f11, {0, 1}), 3, 11, true).K == 3);
  CHECK(kind_of([&] { shortest_covering_interval(RationalFunc(P(f7, {1}), P(f7, {0, 1})), 7, 7); }) ==
        ErrorKind::AllWindowsContainPoles);
  CHECK(kind_of([&] { shortest_covering_interval(Poly(f7, {0, 1}), 3, 11); }) == ErrorKind::FieldMismatch);

  std::mt19937_64 rng(8);
  for (std::int64_t p : {7, 11, 13, 17}) {
    auto k = FieldCtx::prime(static_cast<std::uint64_t>(p));
    for (int it = 0; it < 12; ++it) {
      std::vector<std::int64_t> num(2 + rng() % 3), den(1 + rng() % 2);
      for (auto& x : num) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      for (auto& x : den) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      num.back() = 1 + num.back() % (p - 1);
      den.back() = 1 + den.back() % (p - 1);
      const RationalFunc psi(P(k, num), P(k, den));
      std::vector<std::int64_t> vals;
      for (std::int64_t x = 0; x < p; ++x) {
        const auto v = psi.try_eval(k->from_int(x));
        vals.push_back(v ? static_cast<std::int64_t>(v->value()) : -1);
      }
      for (bool wrap : {false, true}) {
        std::uint64_t prev = 0;
        for (std::int64_t H = 1; H <= p; ++H) {
          const std::uint64_t expect = brute_K(vals, p, H, wrap);
          if (expect == UINT64_MAX) {
            CHECK(kind_of([&] { shortest_covering_interval(psi, static_cast<std::uint64_t>(H), static_cast<std::uint64_t>(p), wrap); }) ==
                  ErrorKind::AllWindowsContainPoles);
            break;
          }
          const auto got = shortest_covering_interval(psi, static_cast<std::uint64_t>(H), static_cast<std::uint64_t>(p), wrap);
          CHECK(got.K == expect);
          CHECK(got.K >= prev);
          prev = got.K;
          // The reported window really fits.
          for (std::int64_t i = 1; i <= H; ++i) {
            const std::int64_t y = vals[static_cast<std::size_t>(md(got.u + i, p))];
            CHECK(md(y - (got.v + 1), p) < static_cast<std::int64_t>(got.K));
          }
        }
      }
    }
  }
}

TEST_CASE("Vinogradov counts") {
  CHECK(vinogradov_count(2, 2, 2) == 6);
  for (std::uint64_t H = 1; H <= 100; ++H) CHECK(vinogradov_count(1, 1, H) == H);
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) CHECK(vinogradov_count(d, k, 1) == 1);
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 3; ++k)
      for (int H = 1; H <= (k == 3 ? 4 : 6); ++H) CHECK(vinogradov_count(d, k, static_cast<std::uint64_t>(H)) == brute_vinogradov(d, k, H));
  // J_{1,2}(H) = sum_s r(s)^2 with r the number of ordered pairs summing to s.
  CHECK(vinogradov_count(1, 2, 10) == 670);
  // d >= 2k: only the trivial (permutation) solutions survive.
  CHECK(vinogradov_count(4, 2, 30) == BigInt(2 * 30 * 30 - 30));
  CHECK(kind_of([] { vinogradov_count(3, 6, 1000); }) == ErrorKind::BudgetExceeded);
  CHECK(kind_of([] { vinogradov_count(2, 2, 1000, 1000); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("congruent pairs") {
  auto f7 = FieldCtx::prime(7);
  const auto sq = Poly(f7, {0, 0, 1});
  const auto pairs = congruent_pairs(sq, f7->from_int(4), 6);
  CHECK(pairs.size() == 12);
  for (auto [x, y] : pairs) CHECK((md(static_cast<std::int64_t>(x) - 2 * static_cast<std::int64_t>(y), 7) == 0 ||
                                   md(static_cast<std::int64_t>(x) + 2 * static_cast<std::int64_t>(y), 7) == 0));
  CHECK(congruent_pairs(sq, f7->from_int(3), 6).empty());
  CHECK(kind_of([&] { congruent_pairs(sq, f7->zero(), 6); }) == ErrorKind::ZeroLambda);

  std::mt19937_64 rng(12);
  for (std::int64_t p : {11, 13, 31}) {
    auto k = FieldCtx::prime(static_cast<std::uint64_t>(p));
    for (int it = 0; it < 20; ++it) {
      std::vector<std::int64_t> num(2 + rng() % 3), den(1 + rng() % 2);
      for (auto& x : num) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      for (auto& x : den) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
      num.back() = 1 + num.back() % (p - 1);
      den.back() = 1 + den.back() % (p - 1);
      const RationalFunc psi(P(k, num), P(k, den));
      const std::int64_t lam = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - 1));
      const std::uint64_t H = 1 + rng() % static_cast<std::uint64_t>(p - 1);
      const auto got = congruent_pairs(psi, k->from_int(lam), H);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> expect;
      for (std::uint64_t x = 1; x <= H; ++x)
        for (std::uint64_t y = 1; y <= H; ++y) {
          const auto a = psi.try_eval(k->from_int(static_cast<std::int64_t>(x)));
          const auto b = psi.try_eval(k->from_int(static_cast<std::int64_t>(y)));
          if (a && b && static_cast<std::int64_t>(a->value()) == md(lam * static_cast<std::int64_t>(b->value()), p)) expect.emplace_back(x, y);
        }
      CHECK(got == expect);
      // lambda <-> lambda^{-1} with the pair swapped.
      auto inv = congruent_pairs(psi, k->inv(k->from_int(lam)), H);
      for (auto& pr : inv) std::swap(pr.first, pr.second);
      std::sort(inv.begin(), inv.end());
      CHECK(inv == got);
      if (lam == 1) {
        std::uint64_t poles = 0;
        for (std::uint64_t x = 1; x <= H; ++x) poles += !psi.try_eval(k->from_int(static_cast<std::int64_t>(x)));
        CHECK(got.size() >= H - poles);
      }
    }
  }
}

TEST_CASE("integral points in a box") {
  auto pts = [](IntBiPoly F, std::uint64_t H) { return integral_points_in_box(F, H).count; };
  CHECK(pts({{{0, 1}, 1}, {{2, 0}, -1}}, 16) == 5);
  CHECK(pts({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -25}}, 5) == 4);
  CHECK(pts({{{1, 1}, 1}, {{0, 0}, -6}}, 6) == 4);
  CHECK(pts({{{1, 0}, 1}, {{0, 0}, -3}}, 10) == 11);
  CHECK(kind_of([] { integral_points_in_box({{{1, 0}, 0}}, 3); }) == ErrorKind::ZeroPolynomial);
  const auto bp = integral_points_in_box({{{0, 1}, 1}, {{2, 0}, -1}}, 16);
  CHECK(bp.degree == 2);
  CHECK(bp.reference == doctest::Approx(4.0));

  // y = x^3 on a large box: one point per cube up to 10^6.
  CHECK(pts({{{0, 1}, 1}, {{3, 0}, -1}}, 1'000'000) == 101);
  // Pell-type curve x^2 - 2y^2 = 1 on [0, 10^4]^2: (1,0), (3,2), (17,12), (99,70), (577,408), (3363,2378)
  CHECK(pts({{{2, 0}, 1}, {{0, 2}, -2}, {{0, 0}, -1}}, 10000) == 6);
  // Huge coefficients take the arbitrary-precision path.
  IntBiPoly big{{{0, 1}, pow(BigInt(10), 30)}, {{1, 0}, -pow(BigInt(10), 30)}};
  CHECK(pts(big, 50) == 51);

  std::mt19937_64 rng(77);
  for (int it = 0; it < 150; ++it) {
    IntBiPoly F;
    const int terms = 2 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      const int i = static_cast<int>(rng() % 5), j = static_cast<int>(rng() % (5 - i));
      F[{i, j}] += static_cast<std::int64_t>(rng() % 21) - 10;
    }
    // Plant a root to make the count interesting.
    const std::int64_t x0 = static_cast<std::int64_t>(rng() % 8), y0 = static_cast<std::int64_t>(rng() % 8);
    BigInt at = 0;
    for (const auto& [e, c] : F) at += c * pow(BigInt(x0), static_cast<unsigned>(e.first)) * pow(BigInt(y0), static_cast<unsigned>(e.second));
    F[{0, 0}] -= at;
    bool zero = true;
    for (const auto& [e, c] : F) zero &= c == 0;
    if (zero) continue;
    const std::uint64_t H = 12 + rng() % 20;
    BigInt expect = 0;
    for (std::int64_t x = 0; x <= static_cast<std::int64_t>(H); ++x)
      for (std::int64_t y = 0; y <= static_cast<std::int64_t>(H); ++y) {
        BigInt v = 0;
        for (const auto& [e, c] : F) v += c * pow(BigInt(x), static_cast<unsigned>(e.first)) * pow(BigInt(y), static_cast<unsigned>(e.second));
        expect += v == 0;
      }
    CHECK(pts(F, H) == expect);
  }
}
