#include <doctest.h>

#include <random>

#include "oracles/dense_fp.hpp"
#include "sgv/field.hpp"

using namespace sgv;

namespace {

std::vector<std::uint64_t> modulus_of(const FieldPtr& k) { return {k->modulus().begin(), k->modulus().end()}; }

FieldElem random_elem(const FieldCtx& k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k.degree()));
  for (auto& v : c) v = rng() % k.characteristic();
  return k.from_coeffs(c);
}

}  // namespace

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(1, 101) == 1);
  CHECK(mod_inverse(2, 11) == 6);
  CHECK(mod_inverse(-1, 7) == 6);
  try {
    mod_inverse(14, 7);
    FAIL("expected NonInvertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonInvertible);
  }
}

TEST_CASE("centered_residue") {
  CHECK(centered_residue(10, 7) == 3);
  CHECK(centered_residue(4, 7) == 3);
  CHECK(centered_residue(7, 7) == 0);
  CHECK(centered_residue(-10, 7) == 3);
  CHECK(centered_residue(BigInt(-22), BigInt(7)) == 1);
}

TEST_CASE("centered_residue bounds and congruence") {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 2000; ++it) {
    const std::uint64_t p = 2 + rng() % 1000;
    const std::int64_t a = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto r = centered_residue(a, p);
    CHECK(2 * r <= p);
    const auto pa = static_cast<std::int64_t>(p);
    const bool plus = ((a - static_cast<std::int64_t>(r)) % pa) == 0;
    const bool minus = ((a + static_cast<std::int64_t>(r)) % pa) == 0;
    CHECK((plus || minus));
  }
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(4294967291ULL));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(3215031751ULL));
  int count = 0;
  for (std::uint64_t n = 0; n < 10000; ++n) count += is_prime(n);
  CHECK(count == 1229);
  CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("ext_field_build examples") {
  CHECK(modulus_of(ext_field_build(2, 2)) == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(modulus_of(ext_field_build(5, 2)) == std::vector<std::uint64_t>{2, 0, 1});
  auto f3 = ext_field_build(3, 1);
  CHECK(f3->is_prime_field());
  CHECK(f3->modulus().empty());
  CHECK(ext_field_build(7, 3) == ext_field_build(7, 3));

  try {
    ext_field_build(6, 2);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
  try {
    ext_field_build(5, 13);
    FAIL("expected DegreeTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeTooLarge);
  }
}

TEST_CASE("modulus is the first irreducible in lexicographic order") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (std::size_t t = 2; t <= 4; ++t) {
      const auto expect = oracle::smallest_irreducible(p, t);
      const auto got = modulus_of(ext_field_build(static_cast<std::uint64_t>(p), static_cast<int>(t)));
      REQUIRE(got.size() == expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == static_cast<std::uint64_t>(expect[i]));
    }
  }
}

TEST_CASE("Rabin test agrees with trial division") {
  for (std::int64_t p : {2, 3, 5}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      std::int64_t count = 1;
      for (std::size_t i = 0; i < n; ++i) count *= p;
      for (std::int64_t idx = 0; idx < count; ++idx) {
        oracle::Coeffs f(n + 1);
        std::vector<std::uint64_t> u(n + 1);
        std::int64_t v = idx;
        for (std::size_t i = 0; i < n; ++i, v /= p) f[i] = v % p;
        f[n] = 1;
        for (std::size_t i = 0; i <= n; ++i) u[i] = static_cast<std::uint64_t>(f[i]);
        CHECK(is_irreducible_mod_p(u, static_cast<std::uint64_t>(p)) == oracle::brute_irreducible(f, p));
      }
    }
  }
}

TEST_CASE("ext_arith examples") {
  auto f4 = ext_field_build(2, 2);
  const auto x = f4->generator();
  CHECK(ext_arith(*f4, FieldOp::Mul, x, x) == f4->add(x, f4->one()));
  CHECK(ext_arith(*f4, FieldOp::Inv, f4->one(), f4->one()) == f4->one());
  auto f7 = ext_field_build(7, 1);
  CHECK(ext_arith(*f7, FieldOp::Pow, f7->from_int(3), f7->from_int(6)) == f7->one());
  CHECK(f7->pow(f7->from_int(3), BigInt(6)) == f7->one());

  try {
    f4->inv(f4->zero());
    FAIL("expected ZeroInverse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroInverse);
  }
  try {
    f4->add(x, f7->one());
    FAIL("expected CtxMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CtxMismatch);
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (auto [p, t] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {2, 5}, {3, 3}, {5, 2}, {7, 4}, {101, 2}, {65537, 3}}) {
    auto k = ext_field_build(p, t);
    const BigInt order_minus_one = k->order() - 1;
    for (int it = 0; it < 100; ++it) {
      const auto a = random_elem(*k, rng);
      const auto b = random_elem(*k, rng);
      const auto c = random_elem(*k, rng);
      CHECK(k->mul(a, k->add(b, c)) == k->add(k->mul(a, b), k->mul(a, c)));
      CHECK(k->sub(k->add(a, b), b) == a);
      CHECK(k->frobenius(k->pth_root(a)) == a);
      if (a.is_zero()) continue;
      CHECK(k->mul(a, k->inv(a)) == k->one());
      CHECK(k->pow(a, order_minus_one) == k->one());
    }
  }
}

TEST_CASE("element indexing round-trips") {
  auto k = ext_field_build(3, 3);
  for (std::uint64_t i = 0; i < 27; ++i) CHECK(k->index_of(k->element_at(i)) == i);
  CHECK(k->to_string(k->element_at(0)) == "0");
}
