#include "asis/bounds.hpp"
#include "asis/experiments.hpp"
#include "asis/methods.hpp"
#include "asis/orders.hpp"
#include "asis/problems.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::vector<double> to_std(const asis::Vector& v) { return {v.data(), v.data() + v.size()}; }

asis::Vector from_std(const std::vector<double>& v) {
  return Eigen::Map<const asis::Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

py::dict trace_dict(const asis::IterationTrace& t) {
  std::vector<std::vector<double>> iterates;
  for (const auto& x : t.iterates) iterates.push_back(to_std(x));
  return py::dict("method"_a = t.method, "problem"_a = t.problem, "status"_a = asis::to_string(t.status()),
                  "iterations"_a = t.iterations(), "iterates"_a = iterates, "residual_norms"_a = t.residual_norms,
                  "step_norms"_a = t.step_norms, "message"_a = t.message);
}

py::dict order_dict(const asis::OrderEstimate& e) {
  return py::dict("notion"_a = asis::to_string(e.notion), "order"_a = e.order, "per_step"_a = e.per_step,
                  "stable"_a = e.stable);
}

py::dict solve(const std::string& problem, const std::string& method, const std::vector<double>& x0,
               std::optional<std::vector<double>> x_prev, double tol_step, double tol_res, int max_iter,
               double lam, double b) {
  asis::ExperimentConfig config;
  config.x_prev = std::move(x_prev);
  config.lambda = lam;
  const asis::Problem p = asis::problems::by_name(problem, b);
  const asis::Vector start = from_std(x0);
  asis::StoppingCriteria stop;
  stop.step_tolerance = tol_step;
  stop.residual_tolerance = tol_res;
  stop.max_iterations = max_iter;
  stop.validate();
  py::gil_scoped_release release;
  const asis::IterationTrace t = asis::solve(p, asis::make_method(method, config, start), start, stop);
  py::gil_scoped_acquire acquire;
  return trace_dict(t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steffensen-type solvers, a-priori bound recurrences and order estimators";
  py::register_exception<asis::Error>(m, "AsisError", PyExc_ValueError);

  m.def("problem_names", &asis::problems::names);
  m.def("method_names", &asis::method_names);
  m.def("experiment_names", &asis::experiment_names);

  m.def("solve", &solve, "problem"_a, "method"_a, "x0"_a, py::kw_only(), "x_prev"_a = py::none(),
        "tol_step"_a = 0.0, "tol_res"_a = 1e-14, "max_iter"_a = 100, "lam"_a = 0.25, "b"_a = 0.1,
        "Run one method on a bundled problem and return its trace.");

  m.def(
      "run_experiment_json",
      [](const std::string& config) {
        const asis::ExperimentConfig c = asis::config_from_json(config);
        return asis::result_json(asis::run_experiment(c));
      },
      "config"_a, "Run an experiment from a JSON config; returns the JSON result document.");

  m.def(
      "newton_sequences",
      [](double a, std::size_t n) {
        const auto s = asis::newton_sequences(a, n);
        return py::dict("a"_a = s.an, "d"_a = s.dn, "positive"_a = s.positive, "partial_sums"_a = s.partial_sums());
      },
      "a"_a, "n"_a);
  m.def(
      "steffensen_sequences",
      [](double a, std::size_t n) {
        const auto s = asis::steffensen_sequences(a, n);
        return py::dict("a"_a = s.an, "b"_a = s.bn, "c"_a = s.cn, "d"_a = s.dn, "r"_a = s.rn, "positive"_a = s.positive);
      },
      "a"_a, "n"_a);
  m.def(
      "steffensen_on_adim_poly",
      [](double a, std::size_t n) {
        const auto r = asis::steffensen_on_adim_poly(a, n);
        return py::dict("s"_a = r.s, "values"_a = r.values, "derivatives"_a = r.derivatives,
                        "operators"_a = r.operators);
      },
      "a"_a, "n"_a);
  m.def("newton_on_adim_poly", &asis::newton_on_adim_poly, "a"_a, "n"_a);
  m.def(
      "majorizing_roots",
      [](double a) {
        const auto r = asis::majorizing_roots(a);
        return py::make_tuple(r.s_star, r.s_star_star);
      },
      "a"_a);

  m.def(
      "q_order", [](const std::vector<double>& e) { return order_dict(asis::q_order(e)); }, "errors"_a);
  m.def(
      "r_order", [](const std::vector<double>& e) { return order_dict(asis::r_order(e)); }, "errors"_a);
  m.def(
      "aq_order", [](const std::vector<double>& s, double eta) { return order_dict(asis::aq_order(s, eta)); },
      "step_norms"_a, "eta"_a);
}
