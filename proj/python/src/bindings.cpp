#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "pickfam/cli.hpp"
#include "pickfam/daspace.hpp"
#include "pickfam/errors.hpp"
#include "pickfam/identities.hpp"
#include "pickfam/io.hpp"
#include "pickfam/oracle.hpp"
#include "pickfam/pick.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using namespace pickfam;

// JSON crosses the boundary as text; the Python wrapper decodes it.
SubalgebraSpec spec_from(const std::string& text) { return io::parse_spec(json::parse(text)); }

JetElement unit_from(const SubalgebraSpec& spec, const std::string& text) {
  if (text.empty()) return spec.ring().one();
  return io::parse_jet(json::parse(text), spec.ring());
}

std::string conductor_json(const std::string& spec_text) {
  const auto spec = spec_from(spec_text);
  json out{{"spec", io::to_json(spec)},
           {"quotient_dimension", spec.ring().dimension()},
           {"subalgebra_dimension", spec.subalgebra_basis().size()},
           {"picard_dimension", spec.picard_dimension()}};
  if (spec.kind() == SubalgebraSpec::Kind::Semigroup) {
    out["conductor_exponent"] = spec.numerical_semigroup().conductor_exponent();
    out["basis"] = spec.numerical_semigroup().subalgebra_basis_mod_conductor();
  }
  return out.dump();
}

std::string picard_json(const std::string& spec_text, const std::string& unit_text) {
  const auto spec = spec_from(spec_text);
  json coords = json::array();
  for (const auto& c : picard_coordinates(spec, unit_from(spec, unit_text))) coords.push_back(io::to_json(c));
  return coords.dump();
}

std::vector<std::vector<Complex>> kernel_values(const std::string& spec_text, const std::string& unit_text,
                                         const std::vector<Complex>& z, const std::vector<Complex>& w) {
  const auto spec = spec_from(spec_text);
  const auto k = submodule_kernel(spec, unit_from(spec, unit_text));
  const Point zp(z.begin(), z.end()), wp(w.begin(), w.end());
  const Eigen::MatrixXcd m = k.evaluate(zp, wp);
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  return rows;
}

std::string solve_json(const std::string& problem_text) {
  const auto pf = io::parse_problem(json::parse(problem_text));
  Verdict v;
  {
    py::gil_scoped_release release;
    v = sweep(pf.problem);
    if (pf.cross_check) v.oracle = oracle_cross_check(pf.problem);
  }
  return io::to_json(v, pf.problem.options).dump();
}

std::string oracle_json(const std::string& instance_text) {
  const auto inst = io::parse_instance(json::parse(instance_text));
  MinimaxResult r;
  {
    py::gil_scoped_release release;
    r = min_sup_norm(inst);
  }
  return io::to_json(r).dump();
}

std::string verify_json(int degree, std::uint64_t seed) {
  json out = json::array();
  for (const auto& s : run_identity_suites(degree, seed)) out.push_back(io::to_json(s));
  return out.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_pickfam, m) {
  m.doc() = "Native core of pickfam";
  py::register_exception<pickfam::Error>(m, "PickfamError", PyExc_ValueError);
  m.def("conductor", &conductor_json, py::arg("spec"));
  m.def("picard", &picard_json, py::arg("spec"), py::arg("unit"));
  m.def("kernel", &kernel_values, py::arg("spec"), py::arg("unit"), py::arg("z"), py::arg("w"));
  m.def("solve", &solve_json, py::arg("problem"));
  m.def("oracle", &oracle_json, py::arg("instance"));
  m.def("verify", &verify_json, py::arg("degree") = 12, py::arg("seed") = 0);
  m.def("run_cli", &run_cli, py::arg("args"));
}
