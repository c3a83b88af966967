#include "sgv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sgv/factor.hpp"
#include "sgv/lambda.hpp"
#include "sgv/parse.hpp"

namespace sgv {

using json = nlohmann::ordered_json;

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "text") return OutputFormat::Text;
  fail(ErrorKind::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

namespace {

json real_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_real(x));
}

json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

std::string rational_text(const Rational& r) { return r.str(); }

std::string cell_text(const json& v, bool csv) {
  switch (v.type()) {
    case json::value_t::null: return csv ? "" : "n/a";
    case json::value_t::string: return v.get<std::string>();
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::number_float: return format_real(v.get<double>());
    case json::value_t::array: {
      std::string out;
      for (const auto& e : v) {
        if (!out.empty()) out += ' ';
        if (e.is_array()) {
          std::string inner;
          for (const auto& x : e) inner += (inner.empty() ? "" : ",") + cell_text(x, csv);
          out += "(" + inner + ")";
        } else {
          out += cell_text(e, csv);
        }
      }
      return out;
    }
    default: return v.dump();
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;
  /// One record rendered as a JSON object rather than an array.
  bool single = false;
};

std::string render(const Table& t, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      if (t.single && t.rows.size() == 1) {
        os << t.rows[0].dump(2) << '\n';
      } else {
        json arr = json::array();
        for (const auto& r : t.rows) arr.push_back(r);
        os << arr.dump(2) << '\n';
      }
      break;
    }
    case OutputFormat::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
      os << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          const auto it = r.find(t.columns[i]);
          os << (i ? "," : "") << csv_quote(it == r.end() ? std::string() : cell_text(*it, true));
        }
        os << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      if (t.single && t.rows.size() == 1) {
        for (const auto& c : t.columns) os << c << " = " << cell_text(t.rows[0].at(c), false) << '\n';
        break;
      }
      std::vector<std::vector<std::string>> cells{t.columns};
      for (const auto& r : t.rows) {
        std::vector<std::string> line;
        for (const auto& c : t.columns) {
          const auto it = r.find(c);
          line.push_back(it == r.end() ? std::string() : cell_text(*it, false));
        }
        cells.push_back(std::move(line));
      }
      std::vector<std::size_t> width(t.columns.size(), 0);
      for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
      for (const auto& line : cells) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); ++i) {
          s += line[i];
          if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
        }
        os << s << '\n';
      }
      break;
    }
  }
  return os.str();
}

Table report_table(const std::vector<ReportRow>& rows) {
  Table t;
  std::string header(kReportHeader);
  std::stringstream ss(header);
  for (std::string c; std::getline(ss, c, ',');) t.columns.push_back(c);
  for (const auto& r : rows) {
    json j;
    j["p"] = r.p;
    j["d"] = r.d >= 0 ? json(r.d) : json(nullptr);
    j["e"] = r.e >= 0 ? json(r.e) : json(nullptr);
    j["H"] = r.H;
    j["T"] = r.T;
    j["u"] = r.u;
    j["N"] = r.N ? json(*r.N) : json(nullptr);
    j["bound"] = r.bound ? real_json(*r.bound) : json(nullptr);
    j["ratio"] = r.ratio ? real_json(*r.ratio) : json(nullptr);
    j["lambda_count"] = r.lambda_count ? json(*r.lambda_count) : json(nullptr);
    j["status"] = std::string(to_string(r.status));
    j["error"] = r.error;
    j["psi"] = r.psi;
    t.rows.push_back(std::move(j));
  }
  return t;
}

void write_output(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& s, const std::string& what, std::size_t line) {
  T v{};
  std::istringstream is(s);
  is >> v;
  if (s.empty() || !is || !is.eof()) throw ParseError(line, "bad " + what + " '" + s + "' on line " + std::to_string(line));
  if constexpr (std::is_unsigned_v<T>) {
    if (s.front() == '-') throw ParseError(line, "negative " + what + " on line " + std::to_string(line));
  }
  return v;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const BigInt den(trim(s.substr(slash + 1)));
      if (den == 0) fail(ErrorKind::ZeroDenominator, "zero denominator in '" + s + "'");
      return Rational(BigInt(trim(s.substr(0, slash))), den);
    }
    if (s.find_first_of(".eE") != std::string::npos) {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(d)) throw std::invalid_argument(s);
      return Rational(d);
    }
    return Rational(BigInt(trim(s)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
  }
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SUBGROUP_VALUES_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

std::string render_report(const std::vector<ReportRow>& rows, OutputFormat format) {
  return render(report_table(rows), format);
}

void emit_report(const std::vector<ReportRow>& rows, OutputFormat format, const std::string& path, std::ostream& fallback) {
  write_output(render_report(rows, format), path, fallback);
}

std::vector<SweepCell> parse_sweep_config(std::string_view text, bool as_json) {
  std::vector<SweepCell> cells;
  if (as_json) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(e.byte, "invalid JSON sweep config");
    }
    if (!doc.is_array()) throw ParseError(0, "sweep config must be a JSON array of cells");
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto& c = doc[i];
      try {
        SweepCell cell;
        cell.p = c.at("p").get<std::uint64_t>();
        cell.psi = c.at("psi").get<std::string>();
        cell.H = c.at("H").get<std::uint64_t>();
        cell.T = c.at("T").get<std::uint64_t>();
        cell.u = c.contains("u") ? c.at("u").get<std::int64_t>() : 0;
        cells.push_back(std::move(cell));
      } catch (const json::exception& e) {
        throw ParseError(i, "cell " + std::to_string(i) + ": " + e.what());
      }
    }
    return cells;
  }
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    for (auto& f : fields) f = trim(f);
    if (header.empty()) {
      header = fields;
      for (const char* key : {"p", "psi", "H", "T"}) {
        if (std::find(header.begin(), header.end(), key) == header.end()) {
          throw ParseError(lineno, std::string("sweep config header lacks '") + key + "'");
        }
      }
      for (const auto& h : header) {
        if (h != "p" && h != "psi" && h != "H" && h != "T" && h != "u") throw ParseError(lineno, "unknown column '" + h + "'");
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError(lineno, "line " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                                   " fields, expected " + std::to_string(header.size()));
    }
    SweepCell cell;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& h = header[i];
      if (h == "p") cell.p = parse_number<std::uint64_t>(fields[i], "p", lineno);
      if (h == "psi") cell.psi = fields[i];
      if (h == "H") cell.H = parse_number<std::uint64_t>(fields[i], "H", lineno);
      if (h == "T") cell.T = parse_number<std::uint64_t>(fields[i], "T", lineno);
      if (h == "u") cell.u = parse_number<std::int64_t>(fields[i], "u", lineno);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::vector<SweepCell> read_sweep_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  const bool as_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return parse_sweep_config(ss.str(), as_json);
}

Interval parse_interval(std::string_view text, bool wrap) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) fail(ErrorKind::InvalidArgument, "interval must look like a..b");
  std::int64_t a = 0, b = 0;
  try {
    a = parse_number<std::int64_t>(std::string(text.substr(0, dots)), "interval start", 0);
    b = parse_number<std::int64_t>(std::string(text.substr(dots + 2)), "interval end", 0);
  } catch (const ParseError&) {
    fail(ErrorKind::InvalidArgument, "interval must look like a..b with integers, got '" + std::string(text) + "'");
  }
  if (b < a) fail(ErrorKind::InvalidArgument, "empty interval " + std::string(text));
  return Interval::closed(a, b, wrap);
}

// ---------------------------------------------------------------------------

namespace {

struct Common {
  std::string format = "text";
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
  sub->add_option("--threads", c.threads, "worker threads (default: SUBGROUP_VALUES_THREADS or 1)");
  sub->add_option("--seed", c.seed, "seed for randomized internals");
}

json interval_json(const Interval& I) {
  return std::to_string(I.u + 1) + ".." + std::to_string(I.u + static_cast<std::int64_t>(I.H));
}

Table cmd_count(const std::string& psi_text, std::uint64_t p, std::uint64_t T, const std::string& interval, bool wrap) {
  const Interval I = parse_interval(interval, wrap);
  const auto psi = parse_poly_expr(psi_text, p);
  const auto G = subgroup_of_order(p, T);
  const auto c = count_values_in_subgroup(psi, I, G);
  const auto set_count = count_value_set_intersection(psi, I.elements(p), G.elements());
  Table t;
  t.single = true;
  t.columns = {"p", "psi", "interval", "u", "H", "T", "wrap", "N", "value_set_count", "witnesses"};
  json j;
  j["p"] = p;
  j["psi"] = psi.to_string();
  j["interval"] = interval_json(I);
  j["u"] = I.u;
  j["H"] = I.H;
  j["T"] = T;
  j["wrap"] = wrap;
  j["N"] = c.N;
  j["value_set_count"] = set_count;
  j["witnesses"] = c.witnesses;
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_lambda_scan(const std::string& psi_text, std::uint64_t p, int max_ext, unsigned threads) {
  const auto psi = parse_poly_expr(psi_text, p);
  const auto rep = exceptional_lambdas(psi, p, max_ext, threads);
  Table t;
  t.columns = {"psi", "p", "max_ext", "scanned", "bound", "lambda", "lambda_degree", "t", "witness"};
  for (const auto& e : rep.exceptional) {
    json j;
    j["psi"] = psi.to_string();
    j["p"] = p;
    j["max_ext"] = max_ext;
    j["scanned"] = rep.scanned;
    j["bound"] = rep.bound;
    j["lambda"] = e.lambda_field->to_string(e.lambda);
    j["lambda_degree"] = e.lambda_degree;
    j["t"] = e.t;
    j["witness"] = e.witness.to_string();
    t.rows.push_back(std::move(j));
  }
  return t;
}

Table cmd_lattice_find(std::uint64_t p, const std::string& b_text, const std::string& V_text) {
  SmallResidueInstance inst;
  inst.p = p;
  for (const auto& s : split(b_text, ',')) {
    const Rational r = parse_rational(trim(s));
    if (denominator(r) != 1 || abs(numerator(r)) > BigInt(std::numeric_limits<std::int64_t>::max())) {
      fail(ErrorKind::InvalidArgument, "b entries must be 64-bit integers, got '" + s + "'");
    }
    inst.b.push_back(numerator(r).convert_to<std::int64_t>());
  }
  for (const auto& s : split(V_text, ',')) inst.V.push_back(parse_rational(trim(s)));
  const auto res = find_small_residue_multiplier(inst);
  Table t;
  t.single = true;
  t.columns = {"p", "b", "V", "v", "method", "short_vector", "norm", "residues"};
  json j;
  j["p"] = p;
  j["b"] = inst.b;
  json V = json::array();
  for (const auto& v : inst.V) V.push_back(rational_text(v));
  j["V"] = V;
  j["v"] = res.v;
  j["method"] = std::string(to_string(res.method));
  json sv = json::array();
  for (const auto& x : res.short_vector) sv.push_back(big_json(x));
  j["short_vector"] = sv;
  j["norm"] = res.short_vector.empty() ? json(nullptr) : big_json(res.norm);
  json resid = json::array();
  for (auto bi : inst.b) resid.push_back(signed_residue(mul_mod(reduce(bi, p), res.v, p), p));
  j["residues"] = resid;
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_perfect_power(const std::string& psi_text, std::uint64_t p) {
  const auto psi = parse_poly_expr(psi_text, p);
  const auto root = perfect_power_root(psi);
  Table t;
  t.single = true;
  t.columns = {"psi", "p", "n", "phi", "phi_field_degree"};
  json j;
  j["psi"] = psi.to_string();
  j["p"] = p;
  j["n"] = root.n;
  j["phi"] = root.phi.to_string();
  j["phi_field_degree"] = root.phi.ctx()->degree();
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_exponents(int d, int e) {
  const auto x = exponent_set(d, e);
  Table t;
  t.single = true;
  t.columns = {"d", "e", "l", "m", "k", "s", "theta", "rho", "tau", "support"};
  json j;
  j["d"] = d;
  j["e"] = e;
  j["l"] = x.l;
  j["m"] = x.m;
  j["k"] = x.k;
  j["s"] = x.s;
  j["theta"] = rational_text(x.theta);
  j["rho"] = rational_text(x.rho);
  j["tau"] = rational_text(x.tau);
  json sup = json::array();
  for (const auto& [i, jj] : support_set(x.l, x.m)) sup.push_back(json::array({i, jj}));
  j["support"] = sup;
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_trace(const std::string& psi_text, std::uint64_t p, std::uint64_t T, const std::string& interval) {
  const Interval I = parse_interval(interval);
  const auto psi = parse_poly_expr(psi_text, p);
  const auto tr = trace_proof(psi, p, I.H, T, TraceOptions{I.u, std::nullopt});
  Table t;
  t.single = true;
  t.columns = {"p",        "psi",        "interval",    "H",      "T",       "N",          "witnesses",
               "lambda",   "lambda_set", "pair_count",  "pair_lower_bound",  "large_r",    "support",
               "b",        "U",          "levels",      "v",      "method",  "F",          "G",
               "solutions", "z_max",     "z_counts",    "proof_magnitude",   "bound",      "ratio",
               "verified"};
  json j;
  j["p"] = p;
  j["psi"] = psi.to_string();
  j["interval"] = interval_json(I);
  j["H"] = I.H;
  j["T"] = T;
  j["N"] = tr.N;
  json wit = json::array();
  for (auto x : tr.witnesses) wit.push_back(static_cast<std::int64_t>(x) + I.u);
  j["witnesses"] = wit;
  j["lambda"] = tr.lambda;
  j["lambda_set"] = tr.lambda_set;
  j["pair_count"] = tr.pair_count;
  j["pair_lower_bound"] = rational_text(tr.pair_lower_bound);
  j["large_r"] = tr.large_r;
  json sup = json::array();
  for (const auto& [a, b] : tr.support) sup.push_back(json::array({a, b}));
  j["support"] = sup;
  j["b"] = tr.b;
  j["U"] = real_json(tr.levels.U_real);
  json lv = json::array();
  for (const auto& ij : tr.support) lv.push_back(real_json(tr.levels.levels.at(ij).convert_to<double>()));
  j["levels"] = lv;
  j["v"] = tr.multiplier.v;
  j["method"] = std::string(to_string(tr.multiplier.method));
  j["F"] = to_string(tr.F);
  j["G"] = to_string(tr.G);
  j["solutions"] = tr.solutions.size();
  j["z_max"] = big_json(tr.z_max);
  json zc = json::array();
  for (const auto& [z, n] : tr.z_counts) zc.push_back(json::array({big_json(z), n}));
  j["z_counts"] = zc;
  j["proof_magnitude"] = real_json(tr.proof_magnitude);
  j["bound"] = real_json(tr.bound);
  j["ratio"] = real_json(tr.ratio);
  j["verified"] = tr.verified;
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_kshort(const std::string& psi_text, std::uint64_t p, std::uint64_t H, bool wrap) {
  const auto psi = parse_poly_expr(psi_text, p);
  const auto c = shortest_covering_interval(psi, H, p, wrap);
  Table t;
  t.single = true;
  t.columns = {"psi", "p", "H", "wrap", "K", "window", "cover"};
  json j;
  j["psi"] = psi.to_string();
  j["p"] = p;
  j["H"] = H;
  j["wrap"] = wrap;
  j["K"] = c.K;
  j["window"] = std::to_string(c.u + 1) + ".." + std::to_string(c.u + static_cast<std::int64_t>(H));
  j["cover"] = std::to_string(c.v + 1) + ".." + std::to_string(c.v + static_cast<std::int64_t>(c.K));
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_vinogradov(int d, int k, std::uint64_t H, std::uint64_t budget) {
  const BigInt J = vinogradov_count(d, k, H, budget);
  Table t;
  t.single = true;
  t.columns = {"d", "k", "H", "J"};
  json j;
  j["d"] = d;
  j["k"] = k;
  j["H"] = H;
  j["J"] = big_json(J);
  t.rows.push_back(std::move(j));
  return t;
}

Table cmd_points(const std::string& poly, std::uint64_t H) {
  const auto F = parse_int_bipoly(poly);
  const auto r = integral_points_in_box(F, H);
  Table t;
  t.single = true;
  t.columns = {"F", "H", "count", "degree", "reference", "bombieri_pila"};
  json j;
  j["F"] = to_string(F);
  j["H"] = H;
  j["count"] = big_json(r.count);
  j["degree"] = r.degree;
  j["reference"] = real_json(r.reference);
  j["bombieri_pila"] = real_json(r.bombieri_pila);
  t.rows.push_back(std::move(j));
  return t;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Values of rational functions in multiplicative subgroups of F_p"};
  app.name("subgroup-values");
  app.require_subcommand(1);

  Common common;
  std::string psi, interval, b_text, V_text, config, poly;
  std::uint64_t p = 0, T = 0, H = 0, budget = kVinogradovBudget;
  int d = 0, e = 0, k = 0, max_ext = 1;
  bool wrap = false;

  auto* count = app.add_subcommand("count", "count x in an interval with psi(x) in the subgroup of order T");
  count->add_option("--psi", psi, "rational function in x")->required();
  count->add_option("-p,--prime", p, "prime modulus")->required();
  count->add_option("-T,--order", T, "subgroup order")->required();
  count->add_option("--interval", interval, "closed range a..b")->required();
  count->add_flag("--wrap", wrap, "take the interval mod p");

  auto* lscan = app.add_subcommand("lambda-scan", "exceptional lambda for psi");
  lscan->add_option("--psi", psi)->required();
  lscan->add_option("-p,--prime", p)->required();
  lscan->add_option("--max-ext", max_ext, "scan F_{p^t} for t up to this")->check(CLI::Range(1, 12));

  auto* lfind = app.add_subcommand("lattice-find", "v with small residues b_i v mod p");
  lfind->add_option("-p,--prime", p)->required();
  lfind->add_option("--b", b_text, "comma separated integers")->required();
  lfind->add_option("--V", V_text, "comma separated bounds (integers, a/b or decimals)")->required();

  auto* ppow = app.add_subcommand("perfect-power", "largest n with psi an n-th power");
  ppow->add_option("--psi", psi)->required();
  ppow->add_option("-p,--prime", p)->required();

  auto* expo = app.add_subcommand("exponents", "exponents for degrees d, e");
  expo->add_option("-d", d)->required();
  expo->add_option("-e", e)->required();

  auto* trace = app.add_subcommand("trace", "replay the counting argument on one instance");
  trace->add_option("--psi", psi)->required();
  trace->add_option("-p,--prime", p)->required();
  trace->add_option("-T,--order", T)->required();
  trace->add_option("--interval", interval)->required();

  auto* sweep = app.add_subcommand("sweep", "run a grid of cells from a CSV or JSON config");
  sweep->add_option("--config", config, "cells with keys p, psi, H, T, u")->required();

  auto* kshort = app.add_subcommand("kshort", "shortest interval covering H consecutive values");
  kshort->add_option("--psi", psi)->required();
  kshort->add_option("-p,--prime", p)->required();
  kshort->add_option("-H", H)->required();
  kshort->add_flag("--wrap", wrap);

  auto* vino = app.add_subcommand("vinogradov", "solutions of the Vinogradov system");
  vino->add_option("-d", d)->required()->check(CLI::Range(1, 64));
  vino->add_option("-k", k)->required()->check(CLI::Range(1, 64));
  vino->add_option("-H", H)->required();
  vino->add_option("--budget", budget);

  auto* points = app.add_subcommand("points", "integer zeros of F(x, y) in [0, H]^2");
  points->add_option("--poly", poly, "integer polynomial in x and y")->required();
  points->add_option("-H", H)->required();

  for (auto* sub : {count, lscan, lfind, ppow, expo, trace, sweep, kshort, vino, points}) add_common(sub, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const unsigned threads = resolve_threads(common.threads);
    bool format_given = false;
    for (auto* sub : app.get_subcommands()) format_given = sub->count("--format") > 0;
    const OutputFormat format = parse_format(common.format);
    Table table;
    if (*count) {
      table = cmd_count(psi, p, T, interval, wrap);
    } else if (*lscan) {
      table = cmd_lambda_scan(psi, p, max_ext, threads);
    } else if (*lfind) {
      table = cmd_lattice_find(p, b_text, V_text);
    } else if (*ppow) {
      table = cmd_perfect_power(psi, p);
    } else if (*expo) {
      table = cmd_exponents(d, e);
    } else if (*trace) {
      table = cmd_trace(psi, p, T, interval);
    } else if (*sweep) {
      const auto rows = run_sweep(read_sweep_config(config), threads);
      emit_report(rows, format_given ? format : OutputFormat::Csv, common.output, out);
      return 0;
    } else if (*kshort) {
      table = cmd_kshort(psi, p, H, wrap);
    } else if (*vino) {
      table = cmd_vinogradov(d, k, H, budget);
    } else if (*points) {
      table = cmd_points(poly, H);
    }
    write_output(render(table, format), common.output, out);
    return 0;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace sgv
