#include "sgv/lambda.hpp"

#include <algorithm>
#include <thread>

namespace sgv {

namespace {

RationalFunc embed_psi(const RationalFunc& psi, const FieldPtr& target) {
  if (psi.ctx()->fingerprint() == target->fingerprint()) return psi;
  const FieldEmbedding emb(psi.ctx(), target);
  return RationalFunc(emb.apply(psi.num()), emb.apply(psi.den()));
}

/// Smallest d with lambda in F_{p^d}.
int field_degree_of(const FieldCtx& k, const FieldElem& a) {
  const int t = k.degree();
  for (int d = 1; d < t; ++d) {
    if (t % d) continue;
    FieldElem b = a;
    for (int i = 0; i < d; ++i) b = k.frobenius(b);
    if (b == a) return d;
  }
  return t;
}

}  // namespace

BiPoly build_sym_poly(const RationalFunc& psi, const FieldElem& lambda, const FieldPtr& lambda_field) {
  lambda_field->check(lambda);
  if (lambda.is_zero()) fail(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const RationalFunc r = embed_psi(psi, lambda_field);
  const BiPoly fx = BiPoly::from_x(r.num()), gy = BiPoly::from_y(r.den());
  const BiPoly fy = BiPoly::from_y(r.num()), gx = BiPoly::from_x(r.den());
  return fx * gy - (fy * gx).scale(lambda);
}

BiPoly build_sym_poly(const RationalFunc& psi, const FieldElem& lambda) {
  return build_sym_poly(psi, lambda, psi.ctx());
}

std::optional<ExceptionalLambda> exceptional_witness(const RationalFunc& psi, const FieldElem& lambda,
                                                     const FieldPtr& lambda_field) {
  const BiPoly sym = build_sym_poly(psi, lambda, lambda_field);
  const auto verdict = is_absolutely_irreducible(sym);
  if (verdict.absolutely) return std::nullopt;
  const BiPoly target = FieldEmbedding(lambda_field, verdict.witness_field).apply(sym);
  auto co = divide_exact(target, *verdict.witness);
  if (!co) fail(ErrorKind::Internal, "witness does not divide the symmetrized polynomial");
  ExceptionalLambda e{lambda,       lambda_field, field_degree_of(*lambda_field, lambda), *verdict.witness, *co,
                      verdict.witness_field, verdict.witness_degree};
  return e;
}

bool verify_witness(const RationalFunc& psi, const ExceptionalLambda& e) {
  const BiPoly sym = build_sym_poly(psi, e.lambda, e.lambda_field);
  const BiPoly target = FieldEmbedding(e.lambda_field, e.witness_field).apply(sym);
  return e.witness * e.cofactor == target && !e.witness.is_constant() && !e.cofactor.is_constant();
}

LambdaReport exceptional_lambdas(const RationalFunc& psi, std::uint64_t p, int max_ext, unsigned threads) {
  if (psi.ctx()->characteristic() != p || !psi.ctx()->is_prime_field()) {
    fail(ErrorKind::FieldMismatch, "psi must be defined over F_" + std::to_string(p));
  }
  const int D = psi.is_constant() ? 0 : psi.D().value();
  if (D < 2) fail(ErrorKind::DegreeTooSmall, "deg psi = " + std::to_string(D) + " < 2");
  const int n = perfect_power_exponent(psi);
  if (n > 1) fail(ErrorKind::PerfectPowerInput, "psi is a perfect power (exponent " + std::to_string(n) + ")");
  if (max_ext < 1 || max_ext > D) {
    fail(ErrorKind::InvalidArgument, "max-ext must lie in [1, " + std::to_string(D) + "]");
  }

  LambdaReport rep{psi, psi.ctx(), max_ext, 0, {}, 4ULL * static_cast<std::uint64_t>(D) * static_cast<std::uint64_t>(D)};
  for (int t = 1; t <= max_ext; ++t) {
    const auto k = FieldCtx::extension(p, t, FieldCtx::kMaxInternalDegree);
    const BigInt order = k->order();
    if (order > BigInt(1) << 40) fail(ErrorKind::BudgetExceeded, "F_{p^t} too large to scan");
    const auto q = static_cast<std::uint64_t>(order);
    // Elements new at this level: not in any proper subfield.
    std::vector<FieldElem> cand;
    for (std::uint64_t i = 1; i < q; ++i) {
      FieldElem a = k->element_at(i);
      if (field_degree_of(*k, a) == t) cand.push_back(std::move(a));
    }
    rep.scanned += cand.size();
    std::vector<std::optional<ExceptionalLambda>> res(cand.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cand.size())));
    auto work = [&](unsigned id) {
      for (std::size_t i = id; i < cand.size(); i += workers) res[i] = exceptional_witness(psi, cand[i], k);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            errs[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
    for (auto& r : res)
      if (r) rep.exceptional.push_back(std::move(*r));
  }
  return rep;
}

}  // namespace sgv
