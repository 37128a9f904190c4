#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adlv/harness.hpp"
#include "adlv/strata.hpp"

namespace py = pybind11;
using namespace adlv;

namespace {

CaseSpec spec_from(const std::string& case_json) { return parse_case(Json::parse(case_json), "case"); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Semi-module counts for basic Res GL_n";

  static py::exception<Error> adlv_error(m, "AdlvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(adlv_error.ptr(), e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("newton_lambda", [](int n, int d, int mm) { return newton_and_lambda(IsocrystalContext::derive(n, d, mm)).lambda; },
        py::arg("n"), py::arg("d"), py::arg("m"));
  m.def(
      "weight_multiplicity",
      [](const std::vector<std::vector<int>>& mu, const WeightVector& lambda) {
        return weight_multiplicity(Coweight(mu), lambda);
      },
      py::arg("mu"), py::arg("lam"));
  m.def(
      "adlv_dimension",
      [](int n, int d, const std::vector<std::vector<int>>& mu) {
        const Coweight w(mu);
        return adlv_dimension(IsocrystalContext::derive(n, d, w.total()), w);
      },
      py::arg("n"), py::arg("d"), py::arg("mu"));

  m.def("default_battery", [] { return battery_to_json(default_battery()).dump(); });
  m.def(
      "verify",
      [](const std::string& battery_json, int jobs) {
        const auto cases = parse_battery(Json::parse(battery_json));
        py::gil_scoped_release release;
        return verify_battery(cases, jobs).document().dump();
      },
      py::arg("battery_json"), py::arg("jobs") = 1);
  m.def(
      "enumerate", [](const std::string& case_json) { return enumerate_listing(spec_from(case_json)).dump(); },
      py::arg("case_json"));
  m.def(
      "dims", [](const std::string& case_json) { return dimension_report(spec_from(case_json)).dump(); },
      py::arg("case_json"));
  m.def(
      "lattice_check",
      [](const std::string& case_json, std::optional<std::vector<std::pair<int, int64_t>>> abar,
         std::optional<int> iota, int samples, int r, uint64_t seed) {
        LatticeCheckOptions opt;
        if (abar) {
          std::vector<OPoint> pts;
          for (const auto& [tau, i] : *abar) pts.push_back({tau, i});
          opt.abar = pts;
        }
        opt.iota = iota;
        opt.samples = samples;
        opt.r = r;
        opt.seed = seed;
        return lattice_check(spec_from(case_json), opt).to_json().dump();
      },
      py::arg("case_json"), py::arg("abar") = py::none(), py::arg("iota") = py::none(), py::arg("samples") = 4,
      py::arg("r") = 0, py::arg("seed") = 0);
  m.def(
      "multiplicity_check",
      [](int n, const std::vector<int>& fundamentals) { return to_json(multiplicity_case(n, fundamentals)).dump(); },
      py::arg("n"), py::arg("fundamentals"));
}
