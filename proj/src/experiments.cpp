#include "asis/experiments.hpp"

#include "asis/orders.hpp"
#include "asis/problems.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

namespace asis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kReachThreshold = 1e-15;

using json = nlohmann::ordered_json;

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, fmt::format("{} must be finite", what));
}

Vector vector_from(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Vector start_or(const ExperimentConfig& config, Vector fallback) {
  return config.x0 ? vector_from(*config.x0) : fallback;
}

std::optional<Vector> known_root(const std::string& problem) {
  if (problem == "f1") return Vector::Constant(1, 1.0);
  if (problem == "f2") return Vector::Constant(1, 0.5);
  if (problem == "example3") return Vector{{1.0, -1.0}};
  if (problem == "zigzag") return Vector::Zero(2);
  return std::nullopt;
}

/// n, then log₁₀ of the error of every trace.  Zero errors and indices past
/// the end of a trace are NaN.
Table error_table(const std::vector<const IterationTrace*>& traces, const Vector& root, Norm norm) {
  Table t;
  t.name = "errors";
  t.columns.push_back("n");
  std::vector<std::vector<double>> errs;
  std::size_t rows = 0;
  for (const IterationTrace* tr : traces) {
    t.columns.push_back("log10_err_" + tr->method);
    errs.push_back(tr->errors(root, norm));
    rows = std::max(rows, errs.back().size());
  }
  for (std::size_t n = 0; n < rows; ++n) {
    std::vector<double> row{static_cast<double>(n)};
    for (const auto& e : errs) row.push_back(n < e.size() && e[n] > 0.0 ? std::log10(e[n]) : kNaN);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Assertion dominance(const std::string& name, const std::vector<double>& asis_err,
                    const std::vector<double>& newton_err) {
  const std::size_t common = std::min(asis_err.size(), newton_err.size());
  for (std::size_t n = 0; n < common; ++n) {
    if (newton_err[n] < kReachThreshold) break;
    if (asis_err[n] > newton_err[n]) {
      return {name, false, fmt::format("n={}: asis {:.3e} > newton {:.3e}", n, asis_err[n], newton_err[n])};
    }
  }
  return {name, true, fmt::format("checked {} common indices", common)};
}

Assertion converged(const IterationTrace& tr) {
  return {tr.method + "-converges", is_converged(tr.status()),
          fmt::format("status {} after {} iterations", to_string(tr.status()), tr.iterations())};
}

Assertion slower(const std::string& name, const std::vector<double>& slow, const std::vector<double>& fast) {
  const int ns = first_index_below(slow, kReachThreshold);
  const int nf = first_index_below(fast, kReachThreshold);
  return {name, ns >= 0 && nf >= 0 && ns > nf, fmt::format("steffensen reaches 1e-15 at n={}, newton at n={}", ns, nf)};
}

void add_trace_tables(ExperimentResult& r) {
  for (const IterationTrace& tr : r.traces) r.tables.push_back(trace_table(tr));
}

std::string join(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_number(v(i));
  return s;
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const std::string* ExperimentResult::find_metadata(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"example1", "example2", "example3", "zigzag", "bounds-report", "custom"};
  return names;
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"newton", "steffensen", "asis",        "secant",   "damped-steffensen",
                                              "damped-first-order", "fixed-slope", "halley", "bisection"};
  return names;
}

void ExperimentConfig::validate() const {
  if (!contains(experiment_names(), experiment)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown experiment '{}'", experiment));
  }
  if (!contains(problems::names(), problem)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown problem '{}'", problem));
  }
  for (const auto& m : methods) {
    if (!contains(method_names(), m)) throw Error(ErrorCode::InvalidArgument, fmt::format("unknown method '{}'", m));
  }
  if (experiment == "custom" && methods.empty()) throw Error(ErrorCode::InvalidArgument, "custom needs --method");
  if (x0) for (double v : *x0) check_finite(v, "x0");
  if (x_prev) for (double v : *x_prev) check_finite(v, "x-prev");
  for (const auto& [v, what] : {std::pair{tol_step, "tol-step"}, {tol_res, "tol-res"}, {a, "a"}, {k2, "K2"},
                                {bound_b, "B"}, {eta, "eta"}}) {
    if (v) check_finite(*v, what);
  }
  for (const auto& [v, what] : {std::pair{lambda, "lambda"}, {slope, "c"}, {lo, "lo"}, {hi, "hi"}, {b, "b"}}) {
    check_finite(v, what);
  }
  if ((tol_step && *tol_step < 0.0) || (tol_res && *tol_res < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");
  }
  if (max_iter && *max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max-iter must be >= 1");
  if (system != "newton" && system != "steffensen") {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown bound system '{}'", system));
  }
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  if (format != "csv" && format != "json") throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");

  ExperimentConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") c.experiment = v.get<std::string>();
      else if (key == "problem") c.problem = v.get<std::string>();
      else if (key == "methods") c.methods = v.get<std::vector<std::string>>();
      else if (key == "x0") c.x0 = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      else if (key == "x_prev")
        c.x_prev = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      else if (key == "tol_step") c.tol_step = v.get<double>();
      else if (key == "tol_res") c.tol_res = v.get<double>();
      else if (key == "max_iter") c.max_iter = v.get<int>();
      else if (key == "lambda") c.lambda = v.get<double>();
      else if (key == "c") c.slope = v.get<double>();
      else if (key == "lo") c.lo = v.get<double>();
      else if (key == "hi") c.hi = v.get<double>();
      else if (key == "b") c.b = v.get<double>();
      else if (key == "a") c.a = v.get<double>();
      else if (key == "K2") c.k2 = v.get<double>();
      else if (key == "B") c.bound_b = v.get<double>();
      else if (key == "eta") c.eta = v.get<double>();
      else if (key == "system") c.system = v.get<std::string>();
      else if (key == "N") c.n = v.get<int>();
      else if (key == "override") c.override_hypotheses = v.get<bool>();
      else if (key == "out") c.out_dir = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else throw Error(ErrorCode::InvalidArgument, fmt::format("unknown config key '{}'", key));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("bad config value: {}", e.what()));
  }
  c.validate();
  return c;
}

Method make_method(const std::string& name, const ExperimentConfig& config, const Vector& x0) {
  if (name == "newton") return method::Newton{};
  if (name == "steffensen") return method::Steffensen{};
  if (name == "asis") return method::Asis{};
  if (name == "secant") {
    Vector prev = config.x_prev ? vector_from(*config.x_prev) : Vector(x0.array() + 0.5);
    return method::Secant{std::move(prev)};
  }
  if (name == "damped-steffensen") return method::DampedSteffensen{config.lambda};
  if (name == "damped-first-order") return method::DampedFirstOrder{config.lambda};
  if (name == "fixed-slope") return method::FixedSlope{config.slope};
  if (name == "halley") return halley();
  if (name == "bisection") return method::Bisection{config.lo, config.hi};
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown method '{}'", name));
}

StoppingCriteria example_stopping(const ExperimentConfig& config, int default_max_iter) {
  StoppingCriteria s;
  s.step_tolerance = config.tol_step.value_or(0.0);
  s.residual_tolerance = config.tol_res.value_or(0.0);
  s.max_iterations = config.max_iter.value_or(default_max_iter);
  return s;
}

int first_index_below(const std::vector<double>& values, double threshold) {
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (values[n] < threshold) return static_cast<int>(n);
  }
  return -1;
}

ExperimentResult run_example1(const ExperimentConfig& config) {
  const Problem f = problems::f1();
  const Vector x0 = start_or(config, Vector::Zero(1));
  const Vector root = Vector::Constant(1, 1.0);
  const StoppingCriteria stop = example_stopping(config, 60);

  ExperimentResult r;
  r.experiment = "example1";
  r.traces.push_back(solve(f, method::Newton{}, x0, stop));
  r.traces.push_back(solve(f, method::Steffensen{}, x0, stop));
  r.traces.push_back(asis_solve(f, x0, stop).original);
  const auto& [newton, steff, asis] = std::tie(r.traces[0], r.traces[1], r.traces[2]);

  r.tables.push_back(error_table({&newton, &steff, &asis}, root, f.norm()));
  add_trace_tables(r);
  r.metadata.emplace_back("x0", join(x0));
  r.metadata.emplace_back("root", "1");

  const auto en = newton.errors(root), es = steff.errors(root), ea = asis.errors(root);
  r.assertions.push_back(dominance("asis-error-le-newton", ea, en));
  const int nn = first_index_below(en, kReachThreshold);
  r.assertions.push_back({"newton-within-8", nn >= 0 && nn <= 8, fmt::format("newton reaches 1e-15 at n={}", nn)});
  r.assertions.push_back(slower("steffensen-slower-than-newton", es, en));
  return r;
}

ExperimentResult run_example2(const ExperimentConfig& config) {
  const Problem f = problems::f2();
  const Problem g = problems::f1();
  const Vector x0 = start_or(config, Vector::Zero(1));
  const Vector root = Vector::Constant(1, 0.5);

  StoppingCriteria long_stop = example_stopping(config, 5000);
  const StoppingCriteria stop = example_stopping(config, 60);

  ExperimentResult r;
  r.experiment = "example2";
  r.traces.push_back(solve(f, method::Steffensen{}, x0, long_stop));
  r.traces.push_back(solve(f, method::Newton{}, x0, stop));
  AsisResult asis_f2 = asis_solve(f, x0, stop);
  r.traces.push_back(asis_f2.original);
  const IterationTrace& steff = r.traces[0];
  const IterationTrace& newton = r.traces[1];

  const auto es = steff.errors(root);
  const int n_half = first_index_below(es, 0.5);
  const int n_tiny = first_index_below(es, 1e-16);
  r.metadata.emplace_back("x0", join(x0));
  r.metadata.emplace_back("root", "0.5");
  r.metadata.emplace_back("steffensen_first_n_err_below_0.5", std::to_string(n_half));
  r.metadata.emplace_back("steffensen_first_n_err_below_1e-16", std::to_string(n_tiny));

  r.tables.push_back(error_table({&r.traces[0], &r.traces[1], &r.traces[2]}, root, f.norm()));
  add_trace_tables(r);

  r.assertions.push_back({"steffensen-count-0.5", n_half >= 0 && std::abs(n_half - 3705) <= 10,
                          fmt::format("first n with |x-1/2| < 0.5 is {} (reference 3705 +- 10)", n_half)});
  r.assertions.push_back({"steffensen-count-1e-16", n_tiny >= 0 && std::abs(n_tiny - 3716) <= 10,
                          fmt::format("first n with |x-1/2| < 1e-16 is {} (reference 3716 +- 10)", n_tiny)});

  // Newton on f₂ against Newton on f₁ from 2·x0.
  const IterationTrace newton_f1 = solve(g, method::Newton{}, 2.0 * x0, stop);
  double worst = 0.0;
  bool same_length = newton_f1.iterates.size() == newton.iterates.size();
  for (std::size_t n = 0; n < std::min(newton_f1.iterates.size(), newton.iterates.size()); ++n) {
    const double half = 0.5 * newton_f1.iterates[n](0);
    const double scale = std::max(std::abs(half), 1e-300);
    worst = std::max(worst, std::abs(newton.iterates[n](0) - half) / scale);
  }
  r.assertions.push_back({"newton-iterates-halved", same_length && worst <= 1e-12,
                          fmt::format("max relative deviation {:.3e} over {} iterates", worst, newton.iterates.size())});

  const AsisResult asis_f1 = asis_solve(g, 2.0 * x0, stop);
  double gap = 0.0;
  same_length = asis_f1.adimensional.iterates.size() == asis_f2.adimensional.iterates.size();
  for (std::size_t n = 0; n < std::min(asis_f1.adimensional.iterates.size(), asis_f2.adimensional.iterates.size());
       ++n) {
    gap = std::max(gap, (asis_f1.adimensional.iterates[n] - asis_f2.adimensional.iterates[n]).norm());
  }
  r.assertions.push_back({"asis-adimensional-trace-shared", same_length && gap <= 1e-13,
                          fmt::format("max |y_n(f1) - y_n(f2)| = {:.3e}", gap)});
  return r;
}

ExperimentResult run_example3(const ExperimentConfig& config) {
  const Problem f = problems::example3();
  const Vector x0 = start_or(config, Vector::Zero(2));
  const StoppingCriteria stop = example_stopping(config, 100);

  ExperimentResult r;
  r.experiment = "example3";
  r.traces.push_back(solve(f, method::Newton{}, x0, stop));
  r.traces.push_back(solve(f, method::Steffensen{}, x0, stop));
  r.traces.push_back(asis_solve(f, x0, stop).original);
  const auto& [newton, steff, asis] = std::tie(r.traces[0], r.traces[1], r.traces[2]);

  const Vector root = newton.last();
  const double root_residual = newton.residual_norms.back();
  r.metadata.emplace_back("x0", join(x0));
  r.metadata.emplace_back("root", join(root));
  r.metadata.emplace_back("root_source", "converged Newton limit");
  r.metadata.emplace_back("root_residual", format_number(root_residual));

  r.tables.push_back(error_table({&newton, &steff, &asis}, root, f.norm()));
  add_trace_tables(r);

  r.assertions.push_back({"root-residual", root_residual < 1e-14,
                          fmt::format("Newton limit residual {:.3e}", root_residual)});
  for (const IterationTrace* tr : {&newton, &steff, &asis}) r.assertions.push_back(converged(*tr));
  const auto en = newton.errors(root), es = steff.errors(root), ea = asis.errors(root);
  r.assertions.push_back(dominance("asis-error-le-newton", ea, en));
  r.assertions.push_back(slower("steffensen-slower-than-newton", es, en));
  return r;
}

std::vector<Vector> steepest_descent_zigzag(double b, const Vector& start, int steps) {
  const Eigen::Vector2d diag(1.0, b);
  std::vector<Vector> path{start};
  Vector x = start;
  for (int k = 0; k < steps; ++k) {
    const Vector g = diag.cwiseProduct(x);
    const double gg = g.squaredNorm();
    if (gg == 0.0) break;
    const double alpha = gg / g.dot(diag.cwiseProduct(g));
    x = x - alpha * g;
    path.push_back(x);
  }
  return path;
}

ExperimentResult run_zigzag(const ExperimentConfig& config) {
  const double b = config.b;
  if (!(b > 0.0 && b < 1.0)) throw Error(ErrorCode::InvalidArgument, "zigzag needs 0 < b < 1");
  const Vector x0 = start_or(config, Vector{{b, 1.0}});
  const int steps = config.max_iter.value_or(40);
  const double expected = std::pow((1.0 - b) / (1.0 + b), 2);

  ExperimentResult r;
  r.experiment = "zigzag";
  const auto energy = [b](const Vector& v) { return 0.5 * (v(0) * v(0) + b * v(1) * v(1)); };
  const std::vector<Vector> path = steepest_descent_zigzag(b, x0, steps);

  Table t;
  t.name = "descent";
  t.columns = {"n", "x", "y", "H", "ratio"};
  double worst = 0.0;
  for (std::size_t n = 0; n < path.size(); ++n) {
    double ratio = kNaN;
    if (n > 0) {
      ratio = energy(path[n]) / energy(path[n - 1]);
      worst = std::max(worst, std::abs(ratio - expected));
    }
    t.rows.push_back({static_cast<double>(n), path[n](0), path[n](1), energy(path[n]), ratio});
  }
  r.tables.push_back(std::move(t));

  StoppingCriteria stop;
  stop.residual_tolerance = config.tol_res.value_or(1e-13);
  stop.step_tolerance = config.tol_step.value_or(0.0);
  stop.max_iterations = 10;
  r.traces.push_back(asis_solve(problems::zigzag(b), x0, stop).original);
  add_trace_tables(r);
  const IterationTrace& asis = r.traces[0];

  r.metadata.emplace_back("b", format_number(b));
  r.metadata.emplace_back("expected_ratio", format_number(expected));
  r.assertions.push_back({"energy-ratio", path.size() > 1 && worst <= 1e-10,
                          fmt::format("max |ratio - ((1-b)/(1+b))^2| = {:.3e} over {} steps", worst, path.size() - 1)});
  r.assertions.push_back({"asis-one-step",
                          asis.iterations() == 1 && asis.residual_norms.back() <= 1e-13,
                          fmt::format("asis: {} iterations, final residual {:.3e}", asis.iterations(),
                                      asis.residual_norms.back())});
  return r;
}

ExperimentResult run_bounds_report(const ExperimentConfig& config) {
  KantorovichData data;
  if (config.a) {
    data.k2 = *config.a;
    data.b = 1.0;
    data.eta = 1.0;
  } else {
    if (!config.k2 || !config.bound_b || !config.eta) {
      throw Error(ErrorCode::InvalidArgument, "bounds-report needs --a or all of --K2, --B, --eta");
    }
    data.k2 = *config.k2;
    data.b = *config.bound_b;
    data.eta = *config.eta;
  }
  if (!(data.k2 >= 0.0) || !(data.b > 0.0) || !(data.eta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need K2 >= 0, B > 0, eta > 0");
  }
  const BoundSystem system = config.system == "steffensen" ? BoundSystem::Steffensen : BoundSystem::Newton;
  const auto n = static_cast<std::size_t>(config.n);
  const ErrorEnvelopes env = error_envelopes(data, n, system, config.override_hypotheses);

  ExperimentResult r;
  r.experiment = "bounds-report";
  Table t;
  t.name = "bounds";
  t.columns = {"n", "a_n", "b_n", "c_n", "d_n", "r_n", "step_bound", "tail_bound"};

  std::vector<double> residuals;
  if (system == BoundSystem::Newton) {
    const NewtonBoundSequences s = newton_sequences(data.a(), n);
    const std::vector<double> rn = s.partial_sums();
    for (std::size_t k = 0; k < s.size(); ++k) {
      t.rows.push_back({static_cast<double>(k), s.an[k], kNaN, kNaN, s.dn[k], rn[k], env.step[k],
                        env.hypotheses_satisfied ? env.tail[k] : kNaN});
    }
    residuals = newton_invariant_residuals(s);
  } else {
    const SteffensenBoundSequences s = steffensen_sequences(data.a(), n);
    for (std::size_t k = 0; k < s.size(); ++k) {
      t.rows.push_back({static_cast<double>(k), s.an[k], s.bn[k], s.cn[k], s.dn[k], s.rn[k], env.step[k],
                        env.hypotheses_satisfied ? env.tail[k] : kNaN});
    }
    residuals = steffensen_invariant_residuals(s);
  }
  r.tables.push_back(std::move(t));

  double worst = 0.0;
  for (std::size_t k = 0; k < residuals.size(); ++k) worst = std::max(worst, std::abs(residuals[k]));
  r.metadata.emplace_back("system", config.system);
  r.metadata.emplace_back("K2", format_number(data.k2));
  r.metadata.emplace_back("B", format_number(data.b));
  r.metadata.emplace_back("eta", format_number(data.eta));
  r.metadata.emplace_back("a", format_number(data.a()));
  r.metadata.emplace_back("s_star", format_number(env.s_star));
  r.metadata.emplace_back("hypotheses_satisfied", env.hypotheses_satisfied ? "true" : "false");
  r.metadata.emplace_back("invariant_max_residual", format_number(worst));
  if (env.hypotheses_satisfied) {
    r.assertions.push_back({"sequences-positive", env.positive, "all denominators stayed positive"});
  }
  return r;
}

ExperimentResult run_custom(const ExperimentConfig& config) {
  const Problem f = problems::by_name(config.problem, config.b);
  const Vector x0 = start_or(config, Vector::Zero(f.dimension()));
  if (x0.size() != f.dimension()) throw Error(ErrorCode::InvalidArgument, "x0 has wrong dimension");
  StoppingCriteria stop;
  if (config.tol_step) stop.step_tolerance = *config.tol_step;
  if (config.tol_res) stop.residual_tolerance = *config.tol_res;
  if (config.max_iter) stop.max_iterations = *config.max_iter;

  ExperimentResult r;
  r.experiment = "custom";
  for (const std::string& name : config.methods) {
    try {
      r.traces.push_back(solve(f, make_method(name, config, x0), x0, stop));
    } catch (const Error& e) {
      r.assertions.push_back({name + "-runs", false, e.what()});
    }
  }
  r.metadata.emplace_back("problem", config.problem);
  r.metadata.emplace_back("x0", join(x0));

  if (const auto root = known_root(config.problem)) {
    std::vector<const IterationTrace*> ptrs;
    for (const auto& tr : r.traces) ptrs.push_back(&tr);
    r.tables.push_back(error_table(ptrs, *root, f.norm()));
    for (const auto& tr : r.traces) {
      std::string q;
      try {
        q = format_number(q_order(tr.errors(*root, f.norm())).order);
      } catch (const Error&) {
        q = "insufficient data";
      }
      r.metadata.emplace_back("q_order_" + tr.method, q);
    }
  }
  add_trace_tables(r);
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment == "example1") return run_example1(config);
  if (config.experiment == "example2") return run_example2(config);
  if (config.experiment == "example3") return run_example3(config);
  if (config.experiment == "zigzag") return run_zigzag(config);
  if (config.experiment == "bounds-report") return run_bounds_report(config);
  return run_custom(config);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{:.17g}", v);
}

Table trace_table(const IterationTrace& trace) {
  Table t;
  t.name = "trace_" + trace.method;
  t.columns.push_back("n");
  const Eigen::Index m = trace.iterates.empty() ? 0 : trace.iterates.front().size();
  for (Eigen::Index i = 0; i < m; ++i) t.columns.push_back(fmt::format("x{}", i + 1));
  t.columns.push_back("residual_norm");
  t.columns.push_back("step_norm");
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    std::vector<double> row{static_cast<double>(n)};
    for (Eigen::Index i = 0; i < m; ++i) row.push_back(trace.iterates[n](i));
    row.push_back(n < trace.residual_norms.size() ? trace.residual_norms[n] : kNaN);
    row.push_back(n > 0 && n - 1 < trace.step_norms.size() ? trace.step_norms[n - 1] : kNaN);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string table_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json trace_json(const IterationTrace& tr) {
  json j;
  j["method"] = tr.method;
  j["problem"] = tr.problem;
  j["status"] = to_string(tr.status());
  j["iterations"] = tr.iterations();
  j["message"] = tr.message;
  j["fd_jacobian"] = tr.fd_jacobian;
  j["coincident_nodes"] = tr.coincident_nodes;
  j["contract_violations"] = tr.contract_violations;
  j["residual_evaluations"] = tr.counters.residuals;
  j["jacobian_evaluations"] = tr.counters.jacobians;
  std::size_t ill = 0;
  for (bool b : tr.ill_conditioned) ill += b ? 1 : 0;
  j["ill_conditioned_steps"] = ill;
  return j;
}

json summary_json(const ExperimentResult& r) {
  json j;
  j["experiment"] = r.experiment;
  j["passed"] = r.passed();
  json meta = json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  json asserts = json::array();
  for (const Assertion& a : r.assertions) asserts.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  j["assertions"] = asserts;
  json traces = json::array();
  for (const auto& tr : r.traces) traces.push_back(trace_json(tr));
  j["traces"] = traces;
  return j;
}

}  // namespace

std::string result_json(const ExperimentResult& result) {
  json j = summary_json(result);
  json tables = json::array();
  for (const Table& t : result.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json jr = json::array();
      for (double v : row) jr.push_back(number_or_null(v));
      rows.push_back(std::move(jr));
    }
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["tables"] = std::move(tables);
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const ExperimentResult& result, const std::string& dir,
                                       const std::string& format) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  const auto write = [&written](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot write {}", path.string()));
    out << text;
    written.push_back(path.string());
  };
  if (format == "json") {
    write(fs::path(dir) / (result.experiment + ".json"), result_json(result));
    return written;
  }
  for (const Table& t : result.tables) write(fs::path(dir) / (result.experiment + "_" + t.name + ".csv"), table_csv(t));
  write(fs::path(dir) / (result.experiment + "_summary.json"), summary_json(result).dump(2) + "\n");
  return written;
}

}  // namespace asis
