#pragma once

#include "asis/adimensional.hpp"
#include "asis/divdiff.hpp"
#include "asis/problem.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace asis {

namespace method {

/// Scalar-only; iterates are bracket midpoints.
struct Bisection {
  double lo = 0.0;
  double hi = 1.0;
};

/// Δ = −c·F(x).
struct FixedSlope {
  double c = 1.0;
};

/// Δ = −λ F′(x₀)⁻¹F(x).  For scalar problems 0 < |λ f′(x)/f′(x₀)| < 2 is
/// monitored and violations counted.
struct DampedFirstOrder {
  double lambda = 1.0;
};

struct Newton {};

/// Divided difference on the two previous iterates, starting from `previous`.
struct Secant {
  Vector previous;
};

struct Steffensen {
  DividedDifference dd = DividedDifference::componentwise();
};

/// Node x + λF(x)/f′(x₀) (scalar) or x + λF(x)/‖F′(x₀)‖ (system).
struct DampedSteffensen {
  double lambda = 1.0;
  DividedDifference dd = DividedDifference::componentwise();
};

/// Δ = −h(L_f(x))·f(x)/f′(x), L_f = f″f/f′².  Scalar only.
struct HFamily {
  std::function<double(double)> h;
  std::string label = "h-family";
};

/// Steffensen on the adimensional form, iterates mapped back to x-space.
struct Asis {
  DividedDifference dd = DividedDifference::componentwise();
};

}  // namespace method

using Method = std::variant<method::Bisection, method::FixedSlope, method::DampedFirstOrder, method::Newton,
                            method::Secant, method::Steffensen, method::DampedSteffensen, method::HFamily,
                            method::Asis>;

std::string method_name(const Method& m);

/// h(L) = 1/(1 − L/2): Halley's method in the h-family.
method::HFamily halley();

struct StoppingCriteria {
  double step_tolerance = 0.0;      // on ‖x_{n+1} − x_n‖
  double residual_tolerance = 1e-14;  // on ‖F(x_n)‖
  int max_iterations = 100;

  void validate() const;
};

enum class Status {
  Running,
  ConvergedByStep,
  ConvergedByResidual,
  MaxIterations,
  SingularOperator,
  DomainFailure,
  Diverged,
};

const char* to_string(Status s);
bool is_converged(Status s);

/// Record of one solver run.  iterates and residual_norms have one entry per
/// iterate; step_norms, step_rcond and ill_conditioned have one per step.
struct IterationTrace {
  std::string method;
  std::string problem;
  std::vector<Vector> iterates;
  std::vector<double> residual_norms;
  std::vector<double> step_norms;
  std::vector<double> step_rcond;
  std::vector<bool> ill_conditioned;
  EvalCounters counters;
  bool fd_jacobian = false;
  std::size_t coincident_nodes = 0;
  std::size_t contract_violations = 0;
  std::string message;

  Status status() const { return status_; }
  /// Sets the terminal status.  Throws std::logic_error if already set.
  void finish(Status s, std::string note = {});

  std::size_t iterations() const { return step_norms.size(); }
  const Vector& last() const { return iterates.back(); }

  /// ‖xₙ − x*‖ in `norm` for every iterate.
  std::vector<double> errors(const Vector& root, Norm norm = Norm::Euclidean) const;

 private:
  Status status_ = Status::Running;
};

struct StepResult {
  Vector next;
  double rcond = 1.0;
  bool singular = false;
  int coincident_columns = 0;
};

/// x′ = x − F′(x)⁻¹F(x) through an LU solve.
StepResult newton_step(const Problem& problem, const Vector& x, EvalCounters* counters = nullptr);

/// x′ = x − F[x + F(x), x]⁻¹F(x).
StepResult steffensen_step(const Problem& problem, const Vector& x,
                           const DividedDifference& dd = DividedDifference::componentwise(),
                           EvalCounters* counters = nullptr);

/// `derivative_scale` is f′(x₀) for scalar problems and ‖F′(x₀)‖ for systems.
StepResult damped_steffensen_step(const Problem& problem, const Vector& x, double lambda, double derivative_scale,
                                  const DividedDifference& dd = DividedDifference::componentwise(),
                                  EvalCounters* counters = nullptr);

/// Derivative scale used by damped_steffensen_step for a run started at x0.
double damped_steffensen_scale(const Problem& problem, const Vector& x0, EvalCounters* counters = nullptr);

/// x′ = x − F[x_prev, x]⁻¹F(x).
StepResult secant_step(const Problem& problem, const Vector& previous, const Vector& x,
                       EvalCounters* counters = nullptr);

double h_family_step(const Problem& problem, double x, const std::function<double(double)>& h,
                     EvalCounters* counters = nullptr);

/// L_f(x) = f″(x)f(x)/f′(x)².  Throws Error{DerivativeSingular} if f′(x) = 0.
double logarithmic_convexity(const Problem& problem, double x, EvalCounters* counters = nullptr);

/// Runs `method` from x0.  Numerical failures end the run with a status and
/// the partial trace; precondition violations (bad bracket, wrong dimension)
/// throw Error{InvalidArgument}.
///
/// Divergence: ‖xₙ‖ > 1e12, or a residual 1e6 times its running minimum.
IterationTrace solve(const Problem& problem, const Method& method, const Vector& x0,
                     const StoppingCriteria& stop = {});

struct AsisResult {
  AdimensionalForm form;
  IterationTrace adimensional;  // Steffensen on G from y₀
  IterationTrace original;      // the same run mapped to x = T⁻¹y
};

/// Builds the adimensional form at x0 (throws as AdimensionalForm::build)
/// and runs Steffensen on it.  Stopping criteria apply to the adimensional
/// run.
AsisResult asis_solve(const Problem& problem, const Vector& x0, const StoppingCriteria& stop = {},
                      const DividedDifference& dd = DividedDifference::componentwise());

}  // namespace asis
