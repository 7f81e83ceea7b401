#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

#include "sgball/ball_basis.hpp"
#include "sgball/diagnostics.hpp"
#include "sgball/errors.hpp"
#include "sgball/jacobi.hpp"
#include "sgball/solver.hpp"

namespace py = pybind11;

namespace {

std::vector<std::tuple<int, int, int>> index_tuples(int degree) {
  std::vector<std::tuple<int, int, int>> out;
  for (const auto& idx : sgball::index_set(degree)) out.emplace_back(idx.k(), idx.n(), idx.l());
  return out;
}

py::list to_list(std::span<const double> values) {
  py::list out;
  for (double v : values) out.append(v);
  return out;
}

py::dict solve(const std::string& case_text, int degree, int threads) {
  const auto mcase = sgball::manufactured_case(sgball::parse_case(case_text));
  sgball::SolveOptions options;
  options.threads = threads;
  const auto result = sgball::solve_biharmonic(sgball::radial_field(mcase.f), degree, options);
  py::dict d;
  d["degree"] = degree;
  d["indices"] = index_tuples(degree);
  d["sigma"] = to_list(result.sigma_hat.values());
  d["u"] = to_list(result.u_hat.values());
  d["load"] = to_list(result.load.values());
  return d;
}

std::string convergence(const std::string& case_text, const std::vector<int>& degrees,
                        int threads) {
  sgball::StudyOptions options;
  options.threads = threads;
  return sgball::run_convergence_study(sgball::parse_case(case_text), degrees, options)
      .to_json()
      .dump();
}

}  // namespace

PYBIND11_MODULE(_sgball, m) {
  m.doc() = "Spectral-Galerkin biharmonic solver on the unit ball";

  py::register_exception<sgball::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<sgball::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<sgball::NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def(
      "jacobi",
      [](int n, double alpha, double beta, double t) {
        return sgball::eval_jacobi(n, sgball::JacobiParams(alpha, beta), t);
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("t"));
  m.def(
      "gauss_jacobi",
      [](int m_nodes, double alpha, double beta) {
        auto rule = sgball::gauss_jacobi_rule(m_nodes, sgball::JacobiParams(alpha, beta));
        return py::make_tuple(rule.nodes, rule.weights);
      },
      py::arg("m"), py::arg("alpha"), py::arg("beta"));
  m.def("space_dimension", &sgball::space_dimension, py::arg("degree"));
  m.def("stiffness_lambda", &sgball::stiffness_lambda, py::arg("k"), py::arg("n"));
  m.def("index_set", &index_tuples, py::arg("degree"));
  m.def("solve", &solve, py::arg("case"), py::arg("degree"), py::arg("threads") = 0);
  m.def("_convergence_json", &convergence, py::arg("case"), py::arg("degrees"),
        py::arg("threads") = 0);
  m.def(
      "_basis_check_json",
      [](int degree) { return sgball::to_json(sgball::run_basis_check(degree)).dump(); },
      py::arg("degree"));
}
