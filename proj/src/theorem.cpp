#include "sgv/theorem.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "sgv/factor.hpp"
#include "sgv/lambda.hpp"
#include "sgv/parse.hpp"

namespace sgv {

namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt big_pow(std::uint64_t base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

constexpr unsigned kLevelBits = 40;

}  // namespace

ExponentSet exponent_set(int d, int e) {
  if (d < 0 || e < 0) fail(ErrorKind::InvalidArgument, "degrees must be nonnegative");
  if (d == 0 && e == 0) fail(ErrorKind::DegenerateDegrees, "d = e = 0");
  ExponentSet x;
  x.l = std::min(d, e);
  x.m = std::max(d, e);
  const int l = x.l, m = x.m;
  x.k = (l + 1) * (l * m - l * l + m * m + m);
  x.s = 2 * m * l + 2 * m - l * l;
  x.theta = Rational(1, 2 * x.s);
  x.rho = Rational(x.k, 2 * x.s);
  x.tau = Rational(1, 2 * (l + m));
  return x;
}

std::vector<IndexPair> support_set(int l, int m) {
  if (m < 1 || l < 0 || l > m) {
    fail(ErrorKind::BadRange, "support set needs 0 <= l <= m and m >= 1, got l = " + std::to_string(l) +
                                  ", m = " + std::to_string(m));
  }
  std::vector<IndexPair> out;
  int weight = 0;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (i + j >= 1 && std::min(i, j) <= l) {
        out.emplace_back(i, j);
        weight += i + j;
      }
    }
  }
  const ExponentSet x = exponent_set(l, m);
  const int closed = 2 * (m + 1) * (l + 1) - (l + 1) * (l + 1) - 1;
  if (static_cast<int>(out.size()) != closed || closed != x.s) {
    fail(ErrorKind::Internal, "support set size " + std::to_string(out.size()) + " != s = " + std::to_string(x.s));
  }
  if (weight != x.k) {
    fail(ErrorKind::Internal, "support set weight " + std::to_string(weight) + " != k = " + std::to_string(x.k));
  }
  return out;
}

std::optional<double> effective_c(const ExponentSet& exp, std::uint64_t p, std::uint64_t H) {
  const Rational denom = 2 * exp.rho - 1;
  if (denom <= 0) return std::nullopt;
  const double a = to_double(2 * exp.theta / denom);
  return static_cast<double>(H) * std::pow(static_cast<double>(p), -a);
}

LevelSelection select_test_levels(std::uint64_t p, std::uint64_t H, const ExponentSet& exp) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (H < 2) fail(ErrorKind::BadRange, "level selection needs H >= 2");
  const auto support = support_set(exp.l, exp.m);
  const int s = exp.s;
  const BigInt target = 2 * big_pow(p, s - 1);
  const BigInt X = target * big_pow(H, exp.k);

  LevelSelection sel;
  const BigInt one = 1;
  const BigInt unit = one << kLevelBits;
  sel.U = Rational(integer_root(X << (kLevelBits * static_cast<unsigned>(s)), static_cast<unsigned>(s)), unit);
  sel.U_real = std::pow(to_double(Rational(X)), 1.0 / s);

  IndexPair heaviest = support.front();
  for (const auto& ij : support) {
    if (ij.first + ij.second > heaviest.first + heaviest.second) heaviest = ij;
  }
  Rational rest = 1;
  for (const auto& ij : support) {
    if (ij == heaviest) continue;
    const Rational v = sel.U / Rational(big_pow(H, ij.first + ij.second));
    sel.levels[ij] = v;
    rest *= v;
  }
  sel.levels[heaviest] = Rational(target) / rest;
  sel.product = 1;
  for (const auto& [ij, v] : sel.levels) sel.product *= v;
  if (sel.product != Rational(target)) fail(ErrorKind::Internal, "level product is not 2p^(s-1)");

  Rational vmax = sel.levels.begin()->second, vmin = vmax;
  for (const auto& [ij, v] : sel.levels) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  const auto c = effective_c(exp, p, H);
  const std::string c_text = c ? fmt(*c) : std::string("n/a");
  if (vmax >= Rational(p)) {
    fail(ErrorKind::WindowEmpty, "max V_ij < p fails: U/H = " + fmt(to_double(vmax)) + " >= " + std::to_string(p) +
                                     "; effective c = " + c_text);
  }
  if (vmin < 1) {
    fail(ErrorKind::WindowEmpty, "min V_ij >= 1 fails: " + fmt(to_double(vmin)) + " < 1; effective c = " + c_text);
  }
  return sel;
}

double theorem_bound(const ExponentSet& exp, std::uint64_t p, std::uint64_t H, std::uint64_t T, double C) {
  const double h = static_cast<double>(H);
  return C * (1 + std::pow(h, to_double(exp.rho)) * std::pow(static_cast<double>(p), -to_double(exp.theta))) *
         std::pow(h, to_double(exp.tau)) * std::sqrt(static_cast<double>(T));
}

double subgroup_order_lower_bound(const ExponentSet& exp, std::uint64_t H, std::uint64_t p, BoundVariant variant) {
  const double h = static_cast<double>(H);
  const double a = variant == BoundVariant::Paper ? 1.0 : 2.0;
  const double rho = to_double(exp.rho), tau = to_double(exp.tau), theta = to_double(exp.theta);
  return std::min(std::pow(h, 2 - 2 * tau), std::pow(h, a - 2 * rho - 2 * tau) * std::pow(static_cast<double>(p), 2 * theta));
}

ReducedPower reduce_perfect_power(const RationalFunc& psi, std::uint64_t T) {
  auto root = perfect_power_root(psi);
  if (root.n == 1) return {psi, T, 1};
  return {root.phi, T * static_cast<std::uint64_t>(root.n), root.n};
}

std::vector<Residue> exceptional_residues(const RationalFunc& psi) {
  const auto& k = psi.ctx();
  if (!k->is_prime_field()) fail(ErrorKind::FieldMismatch, "expected a function over a prime field");
  std::vector<Residue> out;
  for (Residue lam = 1; lam < k->characteristic(); ++lam) {
    if (exceptional_witness(psi, k->from_int(static_cast<std::int64_t>(lam)), k)) out.push_back(lam);
  }
  return out;
}

BigInt eval_int_bipoly(const IntBiPoly& F, const BigInt& x, const BigInt& y) {
  BigInt acc = 0;
  for (const auto& [ij, c] : F) acc += c * pow(x, static_cast<unsigned>(ij.first)) * pow(y, static_cast<unsigned>(ij.second));
  return acc;
}

namespace {

IntBiPoly centered(const BiPoly& f, Residue v, std::uint64_t p) {
  IntBiPoly out;
  for (const auto& [ij, c] : f.terms()) {
    const std::int64_t r = signed_residue(mul_mod(c.value(), v, p), p);
    if (r != 0) out[ij] = r;
  }
  return out;
}

}  // namespace

ProofTrace trace_proof(const RationalFunc& psi, std::uint64_t p, std::uint64_t H, std::uint64_t T,
                       const TraceOptions& options) {
  const auto& k = psi.ctx();
  if (!k->is_prime_field() || k->characteristic() != p) {
    fail(ErrorKind::FieldMismatch, "psi does not live over F_" + std::to_string(p));
  }
  if (const int n = perfect_power_exponent(psi); n > 1) {
    fail(ErrorKind::PerfectPowerInput, psi.to_string() + " is a perfect " + std::to_string(n) + "-th power");
  }
  const Subgroup G = subgroup_of_order(p, T);
  Interval{options.u, H, false}.check(p);

  const UniPoly shift = UniPoly::x(k) + UniPoly::constant(k, k->from_int(options.u));
  ProofTrace t(psi, RationalFunc(psi.num().compose(shift), psi.den().compose(shift)));
  t.p = p;
  t.H = H;
  t.T = T;
  t.u = options.u;
  t.exponents = exponent_set(psi.d().value(), psi.e().value());
  const int m = t.exponents.m;

  const auto count = count_values_in_subgroup(t.shifted, Interval{0, H, false}, G);
  t.witnesses = count.witnesses;
  t.N = count.N;
  t.bound = theorem_bound(t.exponents, p, H, T);
  t.ratio = t.bound > 0 ? static_cast<double>(t.N) / t.bound : 0;

  t.lambda_set = options.lambda_set ? *options.lambda_set : exceptional_residues(psi);

  // The averaging step: ratios psi(x_i)/psi(x_j) over witness pairs.
  const ResidueEvaluator ev(t.shifted);
  std::vector<Residue> vals;
  for (Residue x : t.witnesses) vals.push_back(*ev(x));
  std::map<Residue, std::uint64_t> ratio_counts;
  for (Residue a : vals) {
    for (Residue b : vals) ++ratio_counts[mul_mod(a, mod_inverse(static_cast<std::int64_t>(b), p), p)];
  }
  bool found = false;
  for (Residue lam : G.elements()) {
    if (std::binary_search(t.lambda_set.begin(), t.lambda_set.end(), lam)) continue;
    const auto it = ratio_counts.find(lam);
    const std::uint64_t c = it == ratio_counts.end() ? 0 : it->second;
    if (!found || c > t.pair_count) {
      t.lambda = lam;
      t.pair_count = c;
      found = true;
    }
  }
  if (!found) {
    fail(ErrorKind::LambdaSetExhausted, "every element of the subgroup of order " + std::to_string(T) + " is exceptional");
  }
  const BigInt r = t.N;
  const BigInt m3 = BigInt(m) * m * m;
  t.pair_lower_bound = Rational(r * r - 4 * m3 * r, BigInt(T));
  t.pair_bound_met = Rational(t.pair_count) >= t.pair_lower_bound;
  t.large_r = r > 8 * m3;

  const FieldElem lam = k->from_int(static_cast<std::int64_t>(t.lambda));
  const BiPoly sym = build_sym_poly(t.shifted, lam);
  t.support = support_set(t.exponents.l, m);
  for (const auto& [ij, c] : sym.terms()) {
    if (ij != IndexPair{0, 0} && !std::binary_search(t.support.begin(), t.support.end(), ij)) {
      fail(ErrorKind::Internal, "symmetrized term outside the support set");
    }
  }
  for (const auto& [i, j] : t.support) t.b.push_back(sym.coeff(i, j).value());

  t.levels = select_test_levels(p, H, t.exponents);
  SmallResidueInstance inst;
  inst.p = p;
  for (std::size_t idx = 0; idx < t.support.size(); ++idx) {
    inst.b.push_back(static_cast<std::int64_t>(t.b[idx]));
    inst.V.push_back(t.levels.levels.at(t.support[idx]));
  }
  t.multiplier = find_small_residue_multiplier(inst);
  if (!inst.satisfied_by(t.multiplier.v)) fail(ErrorKind::Internal, "multiplier violates its constraints");

  const BiPoly fg = BiPoly::from_x(t.shifted.num()) * BiPoly::from_y(t.shifted.den());
  const BiPoly gf = (BiPoly::from_y(t.shifted.num()) * BiPoly::from_x(t.shifted.den())).scale(lam);
  t.F = centered(fg, t.multiplier.v, p);
  t.G = centered(gf, t.multiplier.v, p);

  IntBiPoly diff = t.F;
  for (const auto& [ij, c] : t.G) diff[ij] -= c;
  BigInt mass = 0;
  for (const auto& [ij, c] : diff) mass += abs(c) * big_pow(H, ij.first + ij.second);
  t.z_max = mass / p;
  const double s = t.exponents.s;
  t.proof_magnitude = std::pow(static_cast<double>(p), -1.0 / s) * std::pow(static_cast<double>(H), t.exponents.k / s) + 1;

  t.verified = true;
  for (const auto& [x, y] : congruent_pairs(t.shifted, lam, H)) {
    const BigInt delta = eval_int_bipoly(t.F, x, y) - eval_int_bipoly(t.G, x, y);
    CongruentSolution sol{x, y, delta / p};
    if (delta % p != 0 || abs(sol.z) > t.z_max) t.verified = false;
    ++t.z_counts[sol.z];
    t.solutions.push_back(std::move(sol));
  }
  return t;
}

// ---------------------------------------------------------------------------

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::WindowEmpty: return "window-empty";
    case RowStatus::PerfectPower: return "perfect-power";
    case RowStatus::Error: return "error";
  }
  return "error";
}

namespace {

class LambdaCache {
 public:
  std::vector<Residue> get(const RationalFunc& psi) {
    const auto key = std::make_pair(psi.ctx()->characteristic(), psi.to_string());
    std::promise<std::vector<Residue>> promise;
    std::shared_future<std::vector<Residue>> future;
    bool owner = false;
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        future = promise.get_future().share();
        cache_.emplace(key, future);
        owner = true;
      } else {
        future = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(exceptional_residues(psi));
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
    }
    return future.get();
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::string>, std::shared_future<std::vector<Residue>>> cache_;
};

std::string describe(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

ReportRow run_cell(const SweepCell& cell, LambdaCache& cache) {
  ReportRow row;
  row.p = cell.p;
  row.H = cell.H;
  row.T = cell.T;
  row.u = cell.u;
  row.psi = cell.psi;
  auto set_bound = [&](double b) {
    row.bound = b;
    if (b > 0 && std::isfinite(b)) row.ratio = static_cast<double>(*row.N) / b;
  };
  try {
    const RationalFunc psi = parse_poly_expr(cell.psi, cell.p);
    row.d = psi.d().is_minus_infinity() ? -1 : psi.d().value();
    row.e = psi.e().value();
    const Subgroup G = subgroup_of_order(cell.p, cell.T);
    row.N = count_values_in_subgroup(psi, Interval{cell.u, cell.H, false}, G).N;
    const int n = perfect_power_exponent(psi);
    if (n > 1) {
      const auto reduced = reduce_perfect_power(psi, cell.T);
      const auto exp = exponent_set(reduced.phi.d().value(), reduced.phi.e().value());
      set_bound(theorem_bound(exp, cell.p, cell.H, reduced.T0));
      row.status = RowStatus::PerfectPower;
      row.error = "perfect " + std::to_string(n) + "-th power; bound uses the root with T0 = " + std::to_string(reduced.T0);
      return row;
    }
    set_bound(theorem_bound(exponent_set(row.d, row.e), cell.p, cell.H, cell.T));
    auto lambda_set = cache.get(psi);
    row.lambda_count = lambda_set.size();
    try {
      const auto t = trace_proof(psi, cell.p, cell.H, cell.T, TraceOptions{cell.u, std::move(lambda_set)});
      if (t.verified) {
        row.status = RowStatus::Ok;
      } else {
        row.status = RowStatus::Error;
        row.error = "trace identity check failed";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowEmpty) throw;
      row.status = RowStatus::WindowEmpty;
      row.error = e.what();
    }
  } catch (const Error& e) {
    row.status = RowStatus::Error;
    row.error = describe(e);
  } catch (const std::exception& e) {
    row.status = RowStatus::Error;
    row.error = std::string("Internal: ") + e.what();
  }
  return row;
}

}  // namespace

std::vector<ReportRow> run_sweep(const std::vector<SweepCell>& cells, unsigned threads) {
  std::vector<ReportRow> rows(cells.size());
  LambdaCache cache;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cells[i], cache);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.p, a.d, a.e, a.H, a.T, a.u, a.psi) < std::tie(b.p, b.d, b.e, b.H, b.T, b.u, b.psi);
  });
  return rows;
}

}  // namespace sgv
