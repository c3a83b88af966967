#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sgv/cli.hpp"
#include "sgv/factor.hpp"
#include "sgv/lambda.hpp"
#include "sgv/parse.hpp"
#include "sgv/theorem.hpp"

namespace py = pybind11;
using namespace sgv;

namespace {

py::object to_py(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.str()); }

py::object to_py(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(numerator(q)), to_py(denominator(q)));
}

py::dict exponents(int d, int e) {
  const auto x = exponent_set(d, e);
  py::dict out;
  out["l"] = x.l;
  out["m"] = x.m;
  out["k"] = x.k;
  out["s"] = x.s;
  out["theta"] = to_py(x.theta);
  out["rho"] = to_py(x.rho);
  out["tau"] = to_py(x.tau);
  return out;
}

py::dict count(const std::string& psi, std::uint64_t p, std::uint64_t T, std::int64_t a, std::int64_t b, bool wrap) {
  const auto r = count_values_in_subgroup(parse_poly_expr(psi, p), Interval::closed(a, b, wrap), subgroup_of_order(p, T));
  py::dict out;
  out["N"] = r.N;
  out["witnesses"] = r.witnesses;
  return out;
}

std::vector<std::string> exceptional(const std::string& psi, std::uint64_t p, int max_ext) {
  std::vector<std::string> out;
  for (const auto& e : exceptional_lambdas(parse_poly_expr(psi, p), p, max_ext).exceptional) out.push_back(e.lambda_field->to_string(e.lambda));
  return out;
}

py::tuple perfect_power(const std::string& psi, std::uint64_t p) {
  const auto r = perfect_power_root(parse_poly_expr(psi, p));
  return py::make_tuple(r.n, r.phi.to_string());
}

py::dict find_multiplier(std::uint64_t p, const std::vector<std::int64_t>& b, const std::vector<double>& V) {
  const auto r = find_small_residue_multiplier(SmallResidueInstance::from_reals(p, b, V));
  py::dict out;
  out["v"] = r.v;
  out["method"] = std::string(to_string(r.method));
  return out;
}

double bound(int d, int e, std::uint64_t p, std::uint64_t H, std::uint64_t T) {
  return theorem_bound(exponent_set(d, e), p, H, T);
}

py::dict trace(const std::string& psi, std::uint64_t p, std::uint64_t H, std::uint64_t T, std::int64_t u) {
  const auto t = trace_proof(parse_poly_expr(psi, p), p, H, T, TraceOptions{u, std::nullopt});
  py::dict out;
  out["N"] = t.N;
  out["witnesses"] = t.witnesses;
  out["lambda"] = t.lambda;
  out["lambda_set"] = t.lambda_set;
  out["multiplier"] = t.multiplier.v;
  out["F"] = to_string(t.F);
  out["G"] = to_string(t.G);
  py::list sols;
  for (const auto& s : t.solutions) sols.append(py::make_tuple(s.x, s.y, to_py(s.z)));
  out["solutions"] = sols;
  out["z_max"] = to_py(t.z_max);
  out["bound"] = t.bound;
  out["ratio"] = t.ratio;
  out["verified"] = t.verified;
  return out;
}

py::list sweep(const std::vector<std::tuple<std::uint64_t, std::string, std::uint64_t, std::uint64_t, std::int64_t>>& cells,
               unsigned threads) {
  std::vector<SweepCell> in;
  for (const auto& [p, psi, H, T, u] : cells) in.push_back({p, psi, H, T, u});
  std::vector<ReportRow> rows;
  {
    py::gil_scoped_release release;
    rows = run_sweep(in, threads);
  }
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["p"] = r.p;
    d["psi"] = r.psi;
    d["d"] = r.d;
    d["e"] = r.e;
    d["H"] = r.H;
    d["T"] = r.T;
    d["u"] = r.u;
    d["N"] = r.N ? py::cast(*r.N) : py::none();
    d["bound"] = r.bound ? py::cast(*r.bound) : py::none();
    d["ratio"] = r.ratio ? py::cast(*r.ratio) : py::none();
    d["lambda_count"] = r.lambda_count ? py::cast(*r.lambda_count) : py::none();
    d["status"] = std::string(to_string(r.status));
    d["error"] = r.error;
    out.append(d);
  }
  return out;
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "SubgroupValuesError");
  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("exponents", &exponents, py::arg("d"), py::arg("e"));
  m.def("support_set", &support_set, py::arg("l"), py::arg("m"));
  m.def("count", &count, py::arg("psi"), py::arg("p"), py::arg("T"), py::arg("a"), py::arg("b"), py::arg("wrap") = false);
  m.def("exceptional_lambdas", &exceptional, py::arg("psi"), py::arg("p"), py::arg("max_ext") = 1);
  m.def("perfect_power", &perfect_power, py::arg("psi"), py::arg("p"));
  m.def("find_multiplier", &find_multiplier, py::arg("p"), py::arg("b"), py::arg("V"));
  m.def("theorem_bound", &bound, py::arg("d"), py::arg("e"), py::arg("p"), py::arg("H"), py::arg("T"));
  m.def("trace", &trace, py::arg("psi"), py::arg("p"), py::arg("H"), py::arg("T"), py::arg("u") = 0);
  m.def("sweep", &sweep, py::arg("cells"), py::arg("threads") = 1);
  m.def("vinogradov_count", [](int d, int k, std::uint64_t H) { return to_py(vinogradov_count(d, k, H)); },
        py::arg("d"), py::arg("k"), py::arg("H"));
  m.def("run_cli", &cli, py::arg("args"));
}
