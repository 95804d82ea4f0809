// Command-line runner for the bundled experiments.
//
//   asis example1 [--out DIR] [--format csv|json]
//   asis bounds-report --a 0.5 --system steffensen -N 10
//   asis custom --problem f1 --method newton,secant --x0 0
//   asis --config experiment.json
//
// Without --out the primary table (csv) or the full result (json) goes to
// stdout.  Assertion lines go to stderr.  Exit status is 0 iff every
// assertion passed, 1 on a failed assertion, 2 on a usage or runtime error.

#include "asis/experiments.hpp"
#include "asis/problems.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int report(const asis::ExperimentResult& result, std::ostream& log) {
  for (const auto& a : result.assertions) {
    log << (a.passed ? "PASS " : "FAIL ") << a.name << ": " << a.detail << '\n';
  }
  return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-invariant Steffensen experiments"};
  asis::ExperimentConfig config;
  std::string config_path;
  std::vector<std::string> methods;
  std::vector<double> x0, x_prev;
  double tol_step = 0, tol_res = 0, a = 0, k2 = 0, bound_b = 0, eta = 0;
  int max_iter = 0;

  app.add_option("experiment", config.experiment, "Experiment to run")
      ->check(CLI::IsMember(asis::experiment_names()));
  app.add_option("--config", config_path, "JSON experiment config (replaces all other options)")
      ->check(CLI::ExistingFile);
  app.add_option("--problem", config.problem, "Problem for custom runs")->check(CLI::IsMember(asis::problems::names()));
  app.add_option("--method", methods, "Comma-separated methods for custom runs")
      ->delimiter(',')
      ->check(CLI::IsMember(asis::method_names()));
  app.add_option("--x0", x0, "Starting point (comma-separated components)")->delimiter(',');
  app.add_option("--x-prev", x_prev, "Second starting point for the secant method")->delimiter(',');
  auto* o_tol_step = app.add_option("--tol-step", tol_step, "Stop when the step norm is at most this");
  auto* o_tol_res = app.add_option("--tol-res", tol_res, "Stop when the residual norm is at most this");
  auto* o_max_iter = app.add_option("--max-iter", max_iter, "Iteration cap");
  app.add_option("--lambda", config.lambda, "Damping for damped methods");
  app.add_option("--c", config.slope, "Slope for the fixed-slope method");
  app.add_option("--lo", config.lo, "Bisection bracket lower end");
  app.add_option("--hi", config.hi, "Bisection bracket upper end");
  app.add_option("--b", config.b, "Zigzag anisotropy, or zigzag problem parameter");
  auto* o_a = app.add_option("--a", a, "Bounds report: a = K2*B*eta directly");
  auto* o_k2 = app.add_option("--K2", k2, "Bounds report: second-derivative bound");
  auto* o_b = app.add_option("--B", bound_b, "Bounds report: bound on the inverse derivative");
  auto* o_eta = app.add_option("--eta", eta, "Bounds report: first-step bound");
  app.add_option("--system", config.system, "Bounds report: newton or steffensen")
      ->check(CLI::IsMember({"newton", "steffensen"}));
  app.add_option("-N", config.n, "Bounds report: number of steps");
  app.add_flag("--override", config.override_hypotheses, "Bounds report: proceed when a > 1/2");
  app.add_option("--out", config.out_dir, "Directory for output files");
  app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      config = asis::config_from_json(buffer.str());
    } else {
      if (config.experiment.empty()) {
        std::cerr << "an experiment name or --config is required\n" << app.help();
        return 2;
      }
      config.methods = methods;
      if (!x0.empty()) config.x0 = x0;
      if (!x_prev.empty()) config.x_prev = x_prev;
      if (*o_tol_step) config.tol_step = tol_step;
      if (*o_tol_res) config.tol_res = tol_res;
      if (*o_max_iter) config.max_iter = max_iter;
      if (*o_a) config.a = a;
      if (*o_k2) config.k2 = k2;
      if (*o_b) config.bound_b = bound_b;
      if (*o_eta) config.eta = eta;
    }
    const asis::ExperimentResult result = asis::run_experiment(config);

    if (config.out_dir.empty()) {
      if (config.format == "json") {
        std::cout << asis::result_json(result);
      } else if (!result.tables.empty()) {
        std::cout << asis::table_csv(result.tables.front());
      }
      return report(result, std::cerr);
    }
    for (const auto& path : asis::write_outputs(result, config.out_dir, config.format)) {
      std::cout << "wrote " << path << '\n';
    }
    return report(result, std::cout);
  } catch (const asis::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
