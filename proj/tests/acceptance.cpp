// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--baseline FILE] [--write-baseline] [--log FILE] [--only N]

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles/dense_fp.hpp"
#include "oracles/generators.hpp"
#include "sgv/cli.hpp"
#include "sgv/factor.hpp"
#include "sgv/lambda.hpp"
#include "sgv/parse.hpp"
#include "sgv/theorem.hpp"

using namespace sgv;

namespace {

// Pinned tolerances and limits.
constexpr double kRatioGrowth = 1.05;
constexpr double kLimitSeconds[] = {0, 1, 120, 120, 300, 600, 300, 60, 300};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Failures {
  int count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  Outcome outcome(const std::string& ok_detail) const {
    if (count == 0) return {true, ok_detail};
    return {false, std::to_string(count) + " failure(s), first: " + first};
  }
};

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

// 1 -------------------------------------------------------------------------
Outcome exponent_identities() {
  Failures f;
  int cells = 0;
  for (int m = 1; m <= 8; ++m) {
    for (int l = 0; l <= m; ++l) {
      const auto x = exponent_set(l, m);
      const auto S = support_set(l, m);
      int weight = 0;
      for (const auto& [i, j] : S) weight += i + j;
      const int closed = 2 * (m + 1) * (l + 1) - (l + 1) * (l + 1) - 1;
      if (static_cast<int>(S.size()) != closed || closed != x.s) f.add("size at l=" + std::to_string(l) + " m=" + std::to_string(m));
      if (weight != x.k) f.add("weight at l=" + std::to_string(l) + " m=" + std::to_string(m));
      ++cells;
    }
  }
  for (int d = 2; d <= 6; ++d) {
    const auto x = exponent_set(d, 0);
    if (x.theta != Rational(1, 4 * d) || x.rho != Rational(d + 1, 4) || x.tau != Rational(1, 2 * d)) {
      f.add("specialization at d=" + std::to_string(d));
    }
  }
  return f.outcome(std::to_string(cells) + " (l, m) cells, d = 2..6 specializations exact");
}

// 2 -------------------------------------------------------------------------
Outcome small_residue_construction() {
  std::mt19937_64 rng(6);
  const auto primes = oracle::small_primes(3, 10007);
  Failures f;
  int done = 0, cross = 0;
  while (done < 1000) {
    const int s = 2 + static_cast<int>(rng() % 4);
    const std::uint64_t p = done % 3 == 0 ? primes[rng() % 300] : primes[rng() % primes.size()];
    auto inst = oracle::random_instance(p, s, rng);
    if (!inst) continue;
    const auto res = find_small_residue_multiplier(*inst);
    if (!oracle::independently_valid(*inst, res.v) || std::gcd(res.v, p) != 1) f.add(inst->describe());
    if (p <= 2000) {
      bool any = false;
      for (std::uint64_t v = 1; v < p && !any; ++v) any = oracle::independently_valid(*inst, v);
      if (!any) f.add("scan finds nothing for " + inst->describe());
      ++cross;
    }
    ++done;
  }
  if (cross < 200) f.add("only " + std::to_string(cross) + " scan cross-checks");
  return f.outcome(std::to_string(done) + " instances valid, " + std::to_string(cross) + " cross-checked by exhaustive scan");
}

// 3 -------------------------------------------------------------------------
Outcome minkowski() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> entry(-50, 50);
  Failures f;
  int done = 0;
  while (done < 500) {
    const int r = 2 + done % 3;
    std::vector<IntVec> cols(static_cast<std::size_t>(r), IntVec(static_cast<std::size_t>(r)));
    for (auto& c : cols)
      for (auto& x : c) x = entry(rng);
    std::optional<LatticeBasis> b;
    try {
      b.emplace(cols);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RankDeficient) continue;
      throw;
    }
    const BigInt vol = lattice_volume_exact(*b);
    const auto sv = shortest_vector_enum(*b);
    // ||v||_inf <= vol^(1/r) iff ||v||_inf^r <= vol, exactly.
    if (sv.norm == 0 || pow(sv.norm, static_cast<unsigned>(r)) > vol) f.add("norm " + sv.norm.str() + " vol " + vol.str());
    ++done;
  }
  return f.outcome(std::to_string(done) + " bases, shortest norm^r <= vol in every case");
}

// 4 -------------------------------------------------------------------------
std::vector<Residue> lambda_indices(const LambdaReport& r) {
  std::vector<Residue> out;
  for (const auto& e : r.exceptional) out.push_back(e.lambda.value());
  return out;
}

Outcome exceptional_sets() {
  Failures f;
  const auto f7 = FieldCtx::prime(7), f5 = FieldCtx::prime(5);
  if (lambda_indices(exceptional_lambdas(parse_poly_expr("x^2+x", f7), 7)) != std::vector<Residue>{1}) f.add("X^2+X over F_7");
  if (lambda_indices(exceptional_lambdas(parse_poly_expr("x^2+1", f5), 5)) != std::vector<Residue>{1}) f.add("X^2+1 over F_5");

  std::mt19937_64 rng(4);
  int done = 0, witnesses = 0;
  std::set<std::pair<std::uint64_t, std::string>> seen;
  while (done < 210) {
    const std::uint64_t p = std::vector<std::uint64_t>{7, 11, 13}[done % 3];
    const auto k = FieldCtx::prime(p);
    std::vector<std::int64_t> num(2 + rng() % 3), den(1 + rng() % 2);
    for (auto& v : num) v = static_cast<std::int64_t>(rng() % p);
    for (auto& v : den) v = static_cast<std::int64_t>(rng() % p);
    if (num.back() == 0 || den.back() == 0) continue;
    const RationalFunc psi(UniPoly::from_ints(k, num), UniPoly::from_ints(k, den));
    if (psi.is_constant() || psi.D() < 2 || psi.D() > 4 || perfect_power_exponent(psi) > 1) continue;
    // Factoring needs the total degree of the symmetrized polynomial below p.
    if (static_cast<std::uint64_t>(psi.d().value() + psi.e().value()) >= p) continue;
    if (!seen.insert({p, psi.to_string()}).second) continue;
    const auto rep = exceptional_lambdas(psi, p);
    const std::uint64_t D = static_cast<std::uint64_t>(psi.D().value());
    if (rep.exceptional.size() > 4 * D * D) f.add(psi.to_string() + " over F_" + std::to_string(p));
    for (const auto& e : rep.exceptional) {
      ++witnesses;
      if (!verify_witness(psi, e)) f.add("witness for " + psi.to_string());
    }
    ++done;
  }
  return f.outcome(std::to_string(done) + " functions, " + std::to_string(witnesses) + " witnesses multiply back, hand checks match");
}

// 5 -------------------------------------------------------------------------
std::vector<SweepCell> sweep_corpus() {
  std::vector<SweepCell> cells;
  for (std::uint64_t p : {31, 61, 101}) {
    for (const char* psi : {"x^2+x", "x^3+x", "(x^2+1)/(x+2)"}) {
      for (std::uint64_t H = 3; H <= 8; ++H) {
        for (std::uint64_t T = 1; T <= 20; ++T) {
          if ((p - 1) % T == 0) cells.push_back({p, psi, H, T, 0});
        }
      }
    }
  }
  return cells;
}

using RowKey = std::tuple<std::uint64_t, int, int, std::uint64_t, std::uint64_t, std::int64_t>;

std::map<RowKey, double> read_baseline(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot read baseline " + path);
  std::map<RowKey, double> out;
  std::string line;
  std::getline(in, line);
  if (line != kReportHeader) fail(ErrorKind::ParseError, "baseline header mismatch in " + path);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() < 9 || f[8].empty()) continue;
    out[{std::stoull(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoull(f[3]), std::stoull(f[4]), std::stoll(f[5])}] =
        std::stod(f[8]);
  }
  return out;
}

struct SweepOptions {
  std::string baseline;
  bool write_baseline = false;
  std::string log;
};

Outcome proof_traces(const SweepOptions& opt) {
  Failures f;
  const auto cells = sweep_corpus();
  const auto rows = run_sweep(cells, 1);

  std::map<std::pair<std::uint64_t, std::string>, std::vector<Residue>> lambda_cache;
  int completed = 0, pairs = 0;
  std::map<std::string, int> statuses;
  for (const auto& cell : cells) {
    const auto psi = parse_poly_expr(cell.psi, cell.p);
    auto& lam = lambda_cache[{cell.p, cell.psi}];
    if (lam.empty()) lam = exceptional_residues(psi);
    std::optional<ProofTrace> t;
    try {
      t.emplace(trace_proof(psi, cell.p, cell.H, cell.T, TraceOptions{cell.u, lam}));
    } catch (const Error& e) {
      ++statuses[std::string(to_string(e.kind()))];
      if (e.kind() != ErrorKind::WindowEmpty && e.kind() != ErrorKind::LambdaSetExhausted) f.add(e.what());
      continue;
    }
    ++completed;
    ++statuses["completed"];
    if (!t->verified) f.add("trace flagged unverified at p=" + std::to_string(cell.p) + " " + cell.psi);
    for (const auto& s : t->solutions) {
      ++pairs;
      const BigInt lhs = eval_int_bipoly(t->F, s.x, s.y);
      const BigInt rhs = eval_int_bipoly(t->G, s.x, s.y) + s.z * cell.p;
      if (lhs != rhs || abs(s.z) > t->z_max) f.add("identity at (" + std::to_string(s.x) + "," + std::to_string(s.y) + ")");
    }
    for (const auto& [ij, c] : t->F)
      if (2 * abs(c) > cell.p) f.add("F coefficient outside [-p/2, p/2]");
    for (const auto& [ij, c] : t->G)
      if (2 * abs(c) > cell.p) f.add("G coefficient outside [-p/2, p/2]");
  }

  for (const auto& r : rows) {
    if (!r.N) {
      f.add("no N for p=" + std::to_string(r.p) + " " + r.psi + ": " + r.error);
      continue;
    }
    if (*r.N > std::min(r.H, r.T)) {
      f.add("N = " + std::to_string(*r.N) + " > min(H, T) at p=" + std::to_string(r.p) + " " + r.psi + " H=" +
            std::to_string(r.H) + " T=" + std::to_string(r.T));
    }
  }

  if (!opt.log.empty()) {
    std::ostringstream unused;
    emit_report(rows, OutputFormat::Csv, opt.log, unused);
  }
  std::string regression = "baseline written";
  if (opt.write_baseline) {
    std::ostringstream unused;
    emit_report(rows, OutputFormat::Csv, opt.baseline, unused);
  } else {
    const auto base = read_baseline(opt.baseline);
    double worst = 0;
    int compared = 0;
    for (const auto& r : rows) {
      if (!r.ratio) continue;
      const auto it = base.find({r.p, r.d, r.e, r.H, r.T, r.u});
      if (it == base.end()) {
        f.add("no baseline ratio for p=" + std::to_string(r.p) + " " + r.psi);
        continue;
      }
      ++compared;
      if (it->second > 0) worst = std::max(worst, *r.ratio / it->second);
      if (*r.ratio > it->second * kRatioGrowth) f.add("ratio grew >5% at p=" + std::to_string(r.p) + " " + r.psi);
    }
    regression = std::to_string(compared) + " ratios within +5% of baseline (max factor " + fixed(worst, 6) + ")";
  }

  std::string status_text;
  for (const auto& [k, v] : statuses) status_text += (status_text.empty() ? "" : ", ") + k + " " + std::to_string(v);
  if (completed == 0) f.add("no trace completed");
  return f.outcome(std::to_string(cells.size()) + " cells (" + status_text + "), " + std::to_string(pairs) +
                   " pairs satisfy F = G + zp, N <= min(H, T) everywhere, " + regression);
}

// 6 -------------------------------------------------------------------------
Outcome factorization() {
  Failures f;
  std::mt19937_64 rng(3);
  int uni = 0;
  for (; uni < 200; ++uni) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 101}[rng() % 7];
    const auto k = FieldCtx::prime(p);
    std::vector<std::int64_t> c(2 + rng() % 8);
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % p);
    c.back() = 1 + c.back() % static_cast<std::int64_t>(p - 1);
    UniPoly g = UniPoly::from_ints(k, c);
    if (uni % 4 == 0) g = g * UniPoly::from_ints(k, {static_cast<std::int64_t>(rng() % p), 1}).pow(2 + rng() % 3);
    const auto fac = factor_univariate(g);
    if (!(fac.expand(k) == g)) f.add("univariate round trip " + g.to_string());
    for (const auto& [u, mult] : fac.factors) {
      oracle::Coeffs dense;
      for (const auto& x : u.coeffs()) dense.push_back(static_cast<std::int64_t>(x.value()));
      if (!oracle::brute_irreducible(dense, static_cast<std::int64_t>(p)) || mult < 1) f.add("factor " + u.to_string());
    }
  }
  int bi = 0, reducible = 0;
  for (std::uint64_t p : {5, 7}) {
    const auto k = FieldCtx::prime(p);
    for (int it = 0; it < 160; ++it) {
      BiPoly F(k);
      switch (it % 4) {
        case 0: F = oracle::random_bi(k, 1 + static_cast<int>(rng() % 2), rng) * oracle::random_bi(k, 1 + static_cast<int>(rng() % 2), rng); break;
        case 1: F = oracle::random_bi(k, 1, rng) * oracle::random_bi(k, 1, rng) * oracle::random_bi(k, 1, rng); break;
        default: F = oracle::random_bi(k, 2 + static_cast<int>(rng() % 3), rng); break;
      }
      if (F.is_zero() || F.total_degree() < 1 || F.total_degree() > 4) continue;
      const bool brute = !oracle::brute_reducible(oracle::to_dense(F), static_cast<std::int64_t>(p));
      if (is_irreducible_bivariate(F, k) != brute) f.add("bivariate " + F.to_string());
      reducible += !brute;
      ++bi;
    }
  }
  if (bi < 300) f.add("only " + std::to_string(bi) + " bivariate inputs");
  const auto f5 = FieldCtx::prime(5);
  BiPoly::Terms t;
  t.emplace(BiPoly::Exponent{2, 0}, f5->one());
  t.emplace(BiPoly::Exponent{0, 2}, f5->from_int(-3));
  const auto v = is_absolutely_irreducible(BiPoly(f5, t), 5);
  if (!v.over_base || v.absolutely) f.add("X^2 - 3Y^2 over F_5");
  return f.outcome(std::to_string(uni) + " univariate round trips, " + std::to_string(bi) + " bivariate oracle agreements (" +
                   std::to_string(reducible) + " reducible), X^2 - 3Y^2 classified");
}

// 7 -------------------------------------------------------------------------
Outcome counting_truths() {
  Failures f;
  const auto f7 = FieldCtx::prime(7);
  const auto G3 = subgroup_of_order(7, 3);
  const auto I = Interval::closed(1, 6);
  if (count_values_in_subgroup(parse_poly_expr("x^2", f7), I, G3).N != 6) f.add("N(X^2)");
  if (count_values_in_subgroup(parse_poly_expr("x^3", f7), I, G3).N != 3) f.add("N(X^3)");
  if (shortest_covering_interval(parse_poly_expr("x^2", 17), 2, 17).K != 1) f.add("K at 17");
  if (shortest_covering_interval(parse_poly_expr("x^2", 7), 2, 7).K != 1) f.add("K at 7");
  if (vinogradov_count(2, 2, 2) != 6) f.add("J_{2,2}(2)");
  for (std::uint64_t H = 1; H <= 100; ++H)
    if (vinogradov_count(1, 1, H) != H) f.add("J_{1,1}(" + std::to_string(H) + ")");
  const auto sq = parse_poly_expr("x^2", f7);
  if (congruent_pairs(sq, f7->from_int(4), 6).size() != 12) f.add("pairs for lambda = 4");
  if (!congruent_pairs(sq, f7->from_int(3), 6).empty()) f.add("pairs for lambda = 3");
  return f.outcome("N = 6, 3; K = 1, 1; J_{2,2}(2) = 6; J_{1,1}(H) = H to 100; pairs 12, 0");
}

// 8 -------------------------------------------------------------------------
Outcome determinism() {
  Failures f;
  const auto dir = std::filesystem::temp_directory_path() / "sgv_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = (dir / "grid.csv").string();
  {
    std::ofstream out(cfg);
    out << "p,psi,H,T,u\n";
    for (const auto& c : sweep_corpus()) out << c.p << ',' << c.psi << ',' << c.H << ',' << c.T << ',' << c.u << '\n';
  }
  const std::vector<std::vector<std::string>> commands{
      {"count", "--psi", "x^3+2*x+5", "-p", "101", "-T", "20", "--interval", "3..60"},
      {"lambda-scan", "--psi", "(x^2+1)/(x+2)", "-p", "13", "--max-ext", "2", "--threads", "2"},
      {"lattice-find", "-p", "10007", "--b", "17,4001,923", "--V", "150,150,5000.5"},
      {"perfect-power", "--psi", "(x+1)^6/(x+3)^2", "-p", "31"},
      {"exponents", "-d", "3", "-e", "2"},
      {"trace", "--psi", "x^2+x", "-p", "101", "-T", "20", "--interval", "1..7"},
      {"kshort", "--psi", "x^3", "-p", "101", "-H", "4", "--wrap"},
      {"vinogradov", "-d", "3", "-k", "3", "-H", "15"},
      {"points", "--poly", "x^2 - 2*y^2 - 1", "-H", "100000"},
      {"sweep", "--config", cfg, "--threads", "1"},
      {"sweep", "--config", cfg, "--threads", "4"},
  };
  std::string serial_sweep;
  int runs = 0;
  for (const auto& base : commands) {
    for (const char* fmt : {"text", "csv", "json"}) {
      auto args = base;
      args.insert(args.end(), {"--format", fmt});
      std::ostringstream o1, e1, o2, e2;
      const int c1 = run_cli(args, o1, e1), c2 = run_cli(args, o2, e2);
      runs += 2;
      if (c1 != 0) f.add(base[0] + ": " + e1.str());
      if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str()) f.add(base[0] + " differs between runs");
      if (base[0] == "sweep" && std::string(fmt) == "csv") {
        if (serial_sweep.empty()) {
          serial_sweep = o1.str();
        } else if (serial_sweep != o1.str()) {
          f.add("parallel sweep differs from serial");
        }
      }
    }
  }
  std::filesystem::remove_all(dir);
  return f.outcome(std::to_string(runs) + " runs of 10 subcommands byte-identical, parallel sweep equals serial");
}

}  // namespace

int main(int argc, char** argv) {
  SweepOptions opt;
  opt.baseline = SGV_BASELINE_PATH;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--baseline" && i + 1 < argc) {
      opt.baseline = argv[++i];
    } else if (a == "--write-baseline") {
      opt.write_baseline = true;
    } else if (a == "--log" && i + 1 < argc) {
      opt.log = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--baseline FILE] [--write-baseline] [--log FILE] [--only N]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exponent identities", exponent_identities},
      {"small-residue multiplier construction", small_residue_construction},
      {"Minkowski bound", minkowski},
      {"exceptional set bound", exceptional_sets},
      {"proof-trace integer identity", [&] { return proof_traces(opt); }},
      {"factorization oracles", factorization},
      {"counting ground truths", counting_truths},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (only && only != id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimitSeconds[id]) {
      o.pass = false;
      o.detail += "; exceeded " + fixed(kLimitSeconds[id], 0) + " s";
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << criteria[i].first << ": " << o.detail << " ["
              << fixed(secs, 2) << " s / " << fixed(kLimitSeconds[id], 0) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
