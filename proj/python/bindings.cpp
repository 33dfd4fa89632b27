#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ncres/residue.hpp"
#include "ncres/spec_file.hpp"
#include "ncres/verify.hpp"
#include "ncres/version.hpp"

namespace py = pybind11;
using namespace ncres;

namespace {

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_vec(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noncommutative residues of model operators: classical and graded "
            "sphere integrals and the zoom-cocycle limit";
  m.attr("__version__") = kVersion;

  py::register_exception<SpecParseError>(m, "SpecParseError", PyExc_ValueError);

  py::class_<OperatorModel>(m, "OperatorModel")
      .def_readonly("name", &OperatorModel::name)
      .def_readonly("order", &OperatorModel::order)
      .def_property_readonly("dim", &OperatorModel::dim)
      .def_property_readonly(
          "weights", [](const OperatorModel& P) { return P.grading.weights; })
      .def_property_readonly("has_symbol", &OperatorModel::has_symbol)
      .def_property_readonly("has_kernel", &OperatorModel::has_kernel)
      .def("__repr__", [](const OperatorModel& P) {
        std::ostringstream os;
        os << "OperatorModel(name='" << P.name << "', dim=" << P.dim()
           << ", order=" << P.order << ")";
        return os.str();
      });

  py::class_<CocycleSample>(m, "CocycleSample")
      .def_readonly("s", &CocycleSample::s)
      .def_readonly("F_at_zero", &CocycleSample::F_at_zero)
      .def_readonly("extrapolation_error", &CocycleSample::extrapolation_error)
      .def_readonly("converged", &CocycleSample::converged);

  py::class_<GroupoidalResult>(m, "GroupoidalResult")
      .def_readonly("value", &GroupoidalResult::value)
      .def_readonly("spread", &GroupoidalResult::spread)
      .def_readonly("error_estimate", &GroupoidalResult::error_estimate)
      .def_readonly("accepted", &GroupoidalResult::accepted)
      .def_readonly("short_circuit", &GroupoidalResult::short_circuit)
      .def_readonly("samples", &GroupoidalResult::samples);

  py::class_<EquivReport>(m, "EquivReport")
      .def_readonly("ponge", &EquivReport::ponge)
      .def_readonly("groupoidal", &EquivReport::groupoidal)
      .def_readonly("agreement_error", &EquivReport::agreement_error)
      .def_readonly("agree", &EquivReport::agree)
      .def_readonly("s_values", &EquivReport::s_values)
      .def_readonly("certification_errors", &EquivReport::certification_errors)
      .def_readonly("certified", &EquivReport::certified)
      .def_readonly("sphere_constant", &EquivReport::c0_value)
      .def_readonly("cocycle_constant", &EquivReport::graded_angular_constant);

  py::class_<ResidueReport>(m, "ResidueReport")
      .def_property_readonly("x",
                             [](const ResidueReport& r) { return from_vec(r.x); })
      .def_readonly("has_wodzicki", &ResidueReport::has_wodzicki)
      .def_readonly("wodzicki", &ResidueReport::wodzicki)
      .def_readonly("has_ponge", &ResidueReport::has_ponge)
      .def_readonly("ponge", &ResidueReport::ponge)
      .def_readonly("has_groupoidal", &ResidueReport::has_groupoidal)
      .def_readonly("groupoidal", &ResidueReport::groupoidal)
      .def_readonly("has_equiv", &ResidueReport::has_equiv)
      .def_readonly("equiv", &ResidueReport::equiv)
      .def_readonly("agreement_error", &ResidueReport::agreement_error)
      .def_readonly("agree", &ResidueReport::agree)
      .def_readonly("note", &ResidueReport::note)
      .def_property_readonly("ok", &ResidueReport::pass);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("measured", &CheckResult::measured)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("detail", &CheckResult::detail)
      .def_property_readonly("ok", [](const CheckResult& c) { return c.pass; })
      .def("__repr__", [](const CheckResult& c) {
        std::ostringstream os;
        os << "CheckResult(name='" << c.name << "', measured=" << c.measured
           << ", tolerance=" << c.tolerance << ", ok=" << (c.pass ? "True" : "False")
           << ")";
        return os.str();
      });

  py::class_<OperatorSpecFile>(m, "OperatorSpec")
      .def_readonly("origin", &OperatorSpecFile::origin)
      .def_readonly("grading", &OperatorSpecFile::grading_name)
      .def_readonly("weights", &OperatorSpecFile::weights)
      .def_readonly("operator_name", &OperatorSpecFile::operator_name)
      .def_readonly("operator_params", &OperatorSpecFile::operator_params)
      .def_readonly("base_points", &OperatorSpecFile::base_points)
      .def_readonly("sphere_degree", &OperatorSpecFile::sphere_degree)
      .def_readonly("s_set", &OperatorSpecFile::s_set)
      .def_readonly("tolerance", &OperatorSpecFile::tolerance)
      .def_readonly("seed", &OperatorSpecFile::seed)
      .def_readonly("format", &OperatorSpecFile::output_format);

  m.def("catalog_names", &catalog_names,
        "Names accepted by make_model / the operator spec key");

  m.def(
      "make_model",
      [](const std::string& name, const std::map<std::string, std::string>& params) {
        return make_model(name, params);
      },
      py::arg("name"), py::arg("params") = std::map<std::string, std::string>{});

  m.def(
      "wodzicki_residue",
      [](const OperatorModel& P, const std::vector<double>& x, int sphere_degree) {
        return wodzicki_residue_at(P, to_vec(x),
                                   sphere_quadrature(P.dim(), sphere_degree));
      },
      py::arg("model"), py::arg("x"), py::arg("sphere_degree") = 30,
      "Classical sphere integral of the critical symbol term (trivial gradings)");

  m.def(
      "ponge_residue",
      [](const OperatorModel& P, const std::vector<double>& x, int sphere_degree) {
        return ponge_residue_at(P, to_vec(x),
                                sphere_quadrature(P.dim(), sphere_degree));
      },
      py::arg("model"), py::arg("x"), py::arg("sphere_degree") = 30,
      "Graded sphere integral of the critical symbol term (graded gradings)");

  m.def(
      "groupoidal_residue",
      [](const OperatorModel& P, const std::vector<double>& x,
         const std::vector<double>& s_set) {
        ResidueOptions opt;
        if (!s_set.empty()) opt.s_set = s_set;
        return groupoidal_residue_at(P, to_vec(x), opt);
      },
      py::arg("model"), py::arg("x"), py::arg("s_set") = std::vector<double>{},
      "Zoom-cocycle limit F_s(0)/log(s), averaged over the scale set");

  m.def(
      "equivalence",
      [](const OperatorModel& P, const std::vector<double>& x) {
        return ponge_groupoidal_equiv(P, to_vec(x));
      },
      py::arg("model"), py::arg("x"),
      "Graded sphere integral vs the symbol-side zoom route, with the "
      "dilation-cocycle certification");

  m.def(
      "residue_report",
      [](const OperatorModel& P, const std::vector<double>& x) {
        return residue_report_at(P, to_vec(x));
      },
      py::arg("model"), py::arg("x"),
      "Every applicable method at one base point, with agreement checks");

  m.def(
      "cocycle_sample",
      [](const OperatorModel& P, const std::vector<double>& x, double s) {
        return cocycle_sample(P, to_vec(x), s);
      },
      py::arg("model"), py::arg("x"), py::arg("s"),
      "One scale of the zoom cocycle, extrapolated to v = 0");

  m.def("verify_suite_names", &verify_suite_names);
  m.def(
      "verify",
      [](const std::string& suite, double tol_floor, std::uint64_t seed) {
        VerifyOptions opt;
        opt.tol_floor = tol_floor;
        opt.seed = seed;
        return run_verify_suite(suite, opt);
      },
      py::arg("suite"), py::arg("tol_floor") = 0.0, py::arg("seed") = 12345,
      "Run a named invariant suite over the built-in catalog");

  m.def("parse_spec_file", &parse_spec_file, py::arg("path"));
  m.def("parse_spec_text", &parse_spec_text, py::arg("text"),
        py::arg("origin") = "<inline>");
}
