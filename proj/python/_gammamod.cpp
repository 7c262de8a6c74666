#include "gammamod/document.hpp"
#include "gammamod/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gammamod;

namespace {

ArrModule module_of(const Document& d) {
  if (auto* m = std::get_if<ArrModule>(&d.payload)) return *m;
  if (auto* g = std::get_if<GammaModule>(&d.payload)) return g->module();
  throw DomainError("expected a module document, got " + d.type());
}

RatVec to_vec(const std::vector<std::string>& xs) {
  RatVec v;
  for (const auto& s : xs) v.push_back(Rat::parse(s));
  return v;
}

RatMat to_mat(const std::vector<std::vector<std::string>>& rows) {
  RatMat m;
  for (const auto& r : rows) m.push_back(to_vec(r));
  return m;
}

py::dict result_dict(const DistanceResult& d) {
  py::dict r;
  r["infinite"] = d.infinite;
  r["value"] = d.infinite ? py::object(py::none()) : py::object(py::str(d.value.str()));
  r["attained"] = !d.infinite && d.attained;
  r["exact"] = d.kind == DistanceResult::Kind::exact;
  r["lo"] = d.lo.str();
  r["hi"] = d.hi_infinite ? py::object(py::none()) : py::object(py::str(d.hi.str()));
  r["budget_exceeded"] = d.budget_exceeded;
  r["decisions"] = d.decisions;
  return r;
}

std::string functor(const std::string& name, const std::string& text) {
  Document d = parse_document(text);
  if (name == "beta-star") return emit_document({beta_star(module_of(d))});
  auto* g = std::get_if<GammaModule>(&d.payload);
  if (!g) throw DomainError(name + " needs a gamma-module document, got " + d.type());
  if (name == "beta-inv") return emit_document({beta_inv(*g)});
  if (name == "alpha-star") return emit_document({alpha_star(*g)});
  throw DomainError("unknown functor \"" + name + "\"");
}

py::dict interleaving(const std::string& a, const std::string& b, const std::vector<std::string>& direction,
                      std::optional<std::string> tol, unsigned budget) {
  ArrModule F = module_of(parse_document(a)), G = module_of(parse_document(b));
  DistanceOptions opt;
  opt.search.budget_bits = budget;
  if (tol) {
    opt.mode = DistanceOptions::Mode::bisection;
    opt.tolerance = Rat::parse(*tol);
  }
  DistanceResult d;
  {
    py::gil_scoped_release release;
    d = interleaving_distance(F, G, to_vec(direction), opt);
  }
  return result_dict(d);
}

py::dict convolution(const std::vector<std::string>& a, const std::vector<std::string>& b, const std::string& unit) {
  GaugeSpec g(ConeSpec::orthant(1, -1), {Rat::parse(unit)});
  return result_dict(convolution_distance(RaySheaf(to_vec(a)), RaySheaf(to_vec(b)), g));
}

std::string principal(const std::vector<std::vector<std::string>>& normals, const std::vector<std::string>& x,
                      std::uint32_t p) {
  auto frame = make_frame(ConeSpec::from_normals(to_mat(normals)));
  return emit_document({principal_module(CellComplex(frame), to_vec(x), p)});
}

py::dict suite(const std::string& name, std::uint64_t seed, std::size_t count) {
  SuiteReport r;
  {
    py::gil_scoped_release release;
    r = run_suite(name, seed, count);
  }
  py::dict d;
  d["suite"] = r.suite;
  d["seed"] = r.seed;
  d["count"] = r.count;
  d["passed"] = r.passed;
  py::list failures;
  for (const auto& f : r.failures) failures.append(py::make_tuple(f.seed, f.detail));
  d["failures"] = failures;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gammamod, m) {
  m.doc() = "Persistence modules over cone orders";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  m.def("document_type", [](const std::string& text) { return parse_document(text).type(); }, py::arg("text"));
  m.def("functor", &functor, py::arg("name"), py::arg("text"));
  m.def("interleaving_distance", &interleaving, py::arg("first"), py::arg("second"), py::arg("direction"),
        py::arg("tol") = py::none(), py::arg("budget") = 20);
  m.def("convolution_distance", &convolution, py::arg("first"), py::arg("second"), py::arg("unit") = "1");
  m.def("principal_module", &principal, py::arg("normals"), py::arg("point"), py::arg("prime") = 2);
  m.def(
      "gauge",
      [](const std::vector<std::vector<std::string>>& normals, const std::vector<std::string>& v,
         const std::vector<std::string>& x) {
        return gauge(GaugeSpec(ConeSpec::from_normals(to_mat(normals)), to_vec(v)), to_vec(x)).str();
      },
      py::arg("normals"), py::arg("direction"), py::arg("point"));
  m.def("run_suite", &suite, py::arg("name"), py::arg("seed") = 1, py::arg("count") = 10);
  m.def("suite_names", &suite_names);
}
