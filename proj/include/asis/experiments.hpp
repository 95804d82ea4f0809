#pragma once

#include "asis/bounds.hpp"
#include "asis/methods.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asis {

/// Rectangular numeric table.  NaN cells are written as empty CSV fields.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<IterationTrace> traces;
  std::vector<Table> tables;  // tables[0] is the primary output
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Assertion> assertions;

  bool passed() const;
  const std::string* find_metadata(const std::string& key) const;
};

/// Everything an experiment run can be parameterized by.  Fields left unset
/// fall back to the experiment's own defaults.
struct ExperimentConfig {
  std::string experiment;
  std::string problem = "f1";                 // custom only
  std::vector<std::string> methods;           // custom only
  std::optional<std::vector<double>> x0;
  std::optional<std::vector<double>> x_prev;  // secant
  std::optional<double> tol_step;
  std::optional<double> tol_res;
  std::optional<int> max_iter;
  double lambda = 0.25;  // damped methods
  double slope = 1.0;    // fixed-slope c
  double lo = 0.0;       // bisection bracket
  double hi = 2.0;
  double b = 0.1;        // zigzag
  std::optional<double> a;  // bounds-report shortcut: K₂ = a, B = η = 1
  std::optional<double> k2;
  std::optional<double> bound_b;
  std::optional<double> eta;
  std::string system = "newton";
  int n = 20;
  bool override_hypotheses = false;
  std::string out_dir;
  std::string format = "csv";

  /// Throws Error{InvalidArgument} on unknown names or non-finite numbers.
  void validate() const;
};

const std::vector<std::string>& experiment_names();
const std::vector<std::string>& method_names();

/// Parses a JSON experiment config.  Unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);

Method make_method(const std::string& name, const ExperimentConfig& config, const Vector& x0);

/// Stopping rule shared by the reproduced examples: iterate until F vanishes
/// exactly or the step underflows to zero.
StoppingCriteria example_stopping(const ExperimentConfig& config, int default_max_iter);

ExperimentResult run_example1(const ExperimentConfig& config = {});
ExperimentResult run_example2(const ExperimentConfig& config = {});
ExperimentResult run_example3(const ExperimentConfig& config = {});
ExperimentResult run_zigzag(const ExperimentConfig& config = {});
/// Throws Error{HypothesesNotSatisfied} when a > 1/2 without override.
ExperimentResult run_bounds_report(const ExperimentConfig& config);
ExperimentResult run_custom(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Exact-line-search steepest descent on H(x, y) = (x² + b·y²)/2.
std::vector<Vector> steepest_descent_zigzag(double b, const Vector& start, int steps);

/// First index n with value < threshold, or -1.
int first_index_below(const std::vector<double>& values, double threshold);

std::string format_number(double v);
Table trace_table(const IterationTrace& trace);
std::string table_csv(const Table& table);
std::string result_json(const ExperimentResult& result);

/// Writes one CSV per table (csv) or a single JSON document (json) into
/// `dir`, creating it if needed.  Returns the written paths.
std::vector<std::string> write_outputs(const ExperimentResult& result, const std::string& dir,
                                       const std::string& format);

}  // namespace asis
