#include "asis/methods.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace asis {

namespace {

constexpr double kIllConditionedRcond = 1e-8;
constexpr double kDivergedNorm = 1e12;
constexpr double kDivergedGrowth = 1e6;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

StepResult linear_step(const Matrix& op, const Vector& x, const Vector& fx) {
  const DenseFactorization lu(op);
  StepResult r;
  r.rcond = lu.rcond();
  if (lu.singular()) {
    r.singular = true;
    r.next = x;
    return r;
  }
  r.next = x - lu.solve(fx);
  return r;
}

StepResult newton_from(const Problem& p, const Vector& x, const Vector& fx, EvalCounters* c) {
  return linear_step(p.jacobian(x, c), x, fx);
}

StepResult dd_step(const Problem& p, const DividedDifference& dd, const Vector& node, const Vector& x,
                   const Vector& fx, EvalCounters* c) {
  const DividedDifferenceMatrix h = divided_difference(dd, p, node, x, c);
  StepResult r = linear_step(h.op, x, fx);
  r.coincident_columns = h.coincident_columns;
  return r;
}

double h_family_from(const Problem& p, double x, double fx, const std::function<double(double)>& h,
                     EvalCounters* c) {
  const double d1 = p.derivative(x, c);
  if (d1 == 0.0) throw Error(ErrorCode::DerivativeSingular, "f'(x) = 0 in h-family step");
  const double lf = p.second_derivative(x, c) * fx / (d1 * d1);
  return x - h(lf) * fx / d1;
}

using Stepper = std::function<StepResult(const Vector& x, const Vector& fx)>;

Stepper make_stepper(const Problem& p, const Method& method, const Vector& x0, IterationTrace& trace) {
  EvalCounters* c = &trace.counters;
  return std::visit(
      overloaded{
          [&](const method::Bisection& m) -> Stepper {
            if (!p.is_scalar()) throw Error(ErrorCode::InvalidArgument, "bisection is scalar-only");
            if (!(m.lo < m.hi)) throw Error(ErrorCode::InvalidArgument, "bisection needs lo < hi");
            const double flo = p.evaluate(m.lo, c);
            const double fhi = p.evaluate(m.hi, c);
            if (flo * fhi > 0.0) throw Error(ErrorCode::InvalidArgument, "bisection bracket has no sign change");
            struct State {
              double lo, hi, flo;
            };
            auto st = std::make_shared<State>(State{m.lo, m.hi, flo});
            return [st](const Vector& x, const Vector& fx) {
              const double mid = x(0);
              // Keep the lower half on ties.
              if (st->flo * fx(0) <= 0.0) {
                st->hi = mid;
              } else {
                st->lo = mid;
                st->flo = fx(0);
              }
              StepResult r;
              r.next = Vector::Constant(1, 0.5 * (st->lo + st->hi));
              return r;
            };
          },
          [&](const method::FixedSlope& m) -> Stepper {
            return [c = m.c](const Vector& x, const Vector& fx) { return StepResult{x - c * fx}; };
          },
          [&](const method::DampedFirstOrder& m) -> Stepper {
            const Matrix j0 = p.jacobian(x0, c);
            auto lu = std::make_shared<const DenseFactorization>(j0);
            if (lu->singular()) throw Error(ErrorCode::DerivativeSingular, "derivative singular at x0");
            const double d0 = j0(0, 0);
            return [&p, &trace, lu, d0, lambda = m.lambda](const Vector& x, const Vector& fx) {
              if (p.is_scalar()) {
                const double ratio = std::abs(lambda * p.derivative(x(0), &trace.counters) / d0);
                if (!(ratio > 0.0 && ratio < 2.0)) ++trace.contract_violations;
              }
              StepResult r;
              r.rcond = lu->rcond();
              r.next = x - lambda * lu->solve(fx);
              return r;
            };
          },
          [&](const method::Newton&) -> Stepper {
            return [&p, c](const Vector& x, const Vector& fx) { return newton_from(p, x, fx, c); };
          },
          [&](const method::Secant& m) -> Stepper {
            if (m.previous.size() != p.dimension()) {
              throw Error(ErrorCode::InvalidArgument, "secant: previous point has wrong dimension");
            }
            struct State {
              Vector prev, fprev;
            };
            auto st = std::make_shared<State>(State{m.previous, p.evaluate(m.previous, c)});
            return [&p, c, st](const Vector& x, const Vector& fx) {
              const DividedDifferenceMatrix h = componentwise_dd(p, st->prev, x, c, &st->fprev);
              StepResult r = linear_step(h.op, x, fx);
              r.coincident_columns = h.coincident_columns;
              st->prev = x;
              st->fprev = fx;
              return r;
            };
          },
          [&](const method::Steffensen& m) -> Stepper {
            return [&p, c, dd = m.dd](const Vector& x, const Vector& fx) { return dd_step(p, dd, x + fx, x, fx, c); };
          },
          [&](const method::DampedSteffensen& m) -> Stepper {
            const double scale = damped_steffensen_scale(p, x0, c);
            return [&p, c, dd = m.dd, scale, lambda = m.lambda](const Vector& x, const Vector& fx) {
              return dd_step(p, dd, x + (lambda / scale) * fx, x, fx, c);
            };
          },
          [&](const method::HFamily& m) -> Stepper {
            if (!p.is_scalar()) throw Error(ErrorCode::InvalidArgument, "h-family is scalar-only");
            if (!m.h) throw Error(ErrorCode::InvalidArgument, "h-family needs h");
            return [&p, c, h = m.h](const Vector& x, const Vector& fx) {
              return StepResult{Vector::Constant(1, h_family_from(p, x(0), fx(0), h, c))};
            };
          },
          [&](const method::Asis&) -> Stepper {
            throw std::logic_error("ASIS runs through asis_solve");
          },
      },
      method);
}

}  // namespace

std::string method_name(const Method& m) {
  return std::visit(overloaded{
                        [](const method::Bisection&) -> std::string { return "bisection"; },
                        [](const method::FixedSlope&) -> std::string { return "fixed-slope"; },
                        [](const method::DampedFirstOrder&) -> std::string { return "damped-first-order"; },
                        [](const method::Newton&) -> std::string { return "newton"; },
                        [](const method::Secant&) -> std::string { return "secant"; },
                        [](const method::Steffensen&) -> std::string { return "steffensen"; },
                        [](const method::DampedSteffensen&) -> std::string { return "damped-steffensen"; },
                        [](const method::HFamily& h) -> std::string { return h.label; },
                        [](const method::Asis&) -> std::string { return "asis"; },
                    },
                    m);
}

method::HFamily halley() {
  return {[](double l) { return 1.0 / (1.0 - 0.5 * l); }, "halley"};
}

void StoppingCriteria::validate() const {
  if (!(step_tolerance >= 0.0) || !(residual_tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");
  }
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Running: return "running";
    case Status::ConvergedByStep: return "converged-by-step";
    case Status::ConvergedByResidual: return "converged-by-residual";
    case Status::MaxIterations: return "max-iter";
    case Status::SingularOperator: return "singular-operator";
    case Status::DomainFailure: return "domain-failure";
    case Status::Diverged: return "diverged";
  }
  return "unknown";
}

bool is_converged(Status s) { return s == Status::ConvergedByStep || s == Status::ConvergedByResidual; }

void IterationTrace::finish(Status s, std::string note) {
  if (status_ != Status::Running) throw std::logic_error("trace status already set");
  if (s == Status::Running) throw std::logic_error("cannot finish with status running");
  status_ = s;
  if (!note.empty()) message = std::move(note);
}

std::vector<double> IterationTrace::errors(const Vector& root, Norm norm) const {
  std::vector<double> out;
  out.reserve(iterates.size());
  for (const Vector& x : iterates) out.push_back(vector_norm(x - root, norm));
  return out;
}

StepResult newton_step(const Problem& problem, const Vector& x, EvalCounters* counters) {
  return newton_from(problem, x, problem.evaluate(x, counters), counters);
}

StepResult steffensen_step(const Problem& problem, const Vector& x, const DividedDifference& dd,
                           EvalCounters* counters) {
  const Vector fx = problem.evaluate(x, counters);
  return dd_step(problem, dd, x + fx, x, fx, counters);
}

double damped_steffensen_scale(const Problem& problem, const Vector& x0, EvalCounters* counters) {
  const Matrix j0 = problem.jacobian(x0, counters);
  const double scale = problem.is_scalar() ? j0(0, 0) : problem.operator_norm_of(j0);
  if (scale == 0.0) throw Error(ErrorCode::DerivativeSingular, "zero derivative scale at x0");
  return scale;
}

StepResult damped_steffensen_step(const Problem& problem, const Vector& x, double lambda, double derivative_scale,
                                  const DividedDifference& dd, EvalCounters* counters) {
  if (derivative_scale == 0.0) throw Error(ErrorCode::InvalidArgument, "derivative scale must be nonzero");
  const Vector fx = problem.evaluate(x, counters);
  return dd_step(problem, dd, x + (lambda / derivative_scale) * fx, x, fx, counters);
}

StepResult secant_step(const Problem& problem, const Vector& previous, const Vector& x, EvalCounters* counters) {
  const Vector fx = problem.evaluate(x, counters);
  const DividedDifferenceMatrix h = componentwise_dd(problem, previous, x, counters);
  StepResult r = linear_step(h.op, x, fx);
  r.coincident_columns = h.coincident_columns;
  return r;
}

double h_family_step(const Problem& problem, double x, const std::function<double(double)>& h,
                     EvalCounters* counters) {
  if (!problem.is_scalar()) throw Error(ErrorCode::InvalidArgument, "h-family is scalar-only");
  return h_family_from(problem, x, problem.evaluate(x, counters), h, counters);
}

double logarithmic_convexity(const Problem& problem, double x, EvalCounters* counters) {
  if (!problem.is_scalar()) throw Error(ErrorCode::InvalidArgument, "L_f is scalar-only");
  const double d1 = problem.derivative(x, counters);
  if (d1 == 0.0) throw Error(ErrorCode::DerivativeSingular, "f'(x) = 0");
  return problem.second_derivative(x, counters) * problem.evaluate(x, counters) / (d1 * d1);
}

IterationTrace solve(const Problem& problem, const Method& method, const Vector& x0, const StoppingCriteria& stop) {
  if (std::holds_alternative<method::Asis>(method)) {
    return asis_solve(problem, x0, stop, std::get<method::Asis>(method).dd).original;
  }
  stop.validate();

  IterationTrace trace;
  trace.method = method_name(method);
  trace.problem = problem.name();

  Vector x = x0;
  if (const auto* b = std::get_if<method::Bisection>(&method)) x = Vector::Constant(1, 0.5 * (b->lo + b->hi));
  if (x.size() != problem.dimension()) throw Error(ErrorCode::InvalidArgument, "x0 has wrong dimension");

  auto record_end = [&trace](Status s, std::string note = {}) {
    trace.fd_jacobian = trace.counters.fd_jacobians > 0;
    trace.finish(s, std::move(note));
  };

  Vector fx;
  try {
    fx = problem.evaluate(x, &trace.counters);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DomainFailure) throw;
    trace.iterates.push_back(x);
    trace.residual_norms.push_back(std::numeric_limits<double>::quiet_NaN());
    record_end(Status::DomainFailure, e.what());
    return trace;
  }
  double residual = problem.norm_of(fx);
  trace.iterates.push_back(x);
  trace.residual_norms.push_back(residual);
  double min_residual = residual;

  Stepper step;
  try {
    step = make_stepper(problem, method, x, trace);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DerivativeSingular) {
      record_end(Status::SingularOperator, e.what());
      return trace;
    }
    if (e.code() == ErrorCode::DomainFailure) {
      record_end(Status::DomainFailure, e.what());
      return trace;
    }
    throw;
  }

  for (int n = 0;; ++n) {
    if (residual <= stop.residual_tolerance) {
      record_end(Status::ConvergedByResidual);
      break;
    }
    if (n == stop.max_iterations) {
      record_end(Status::MaxIterations);
      break;
    }

    StepResult r;
    try {
      r = step(x, fx);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DomainFailure) {
        record_end(Status::DomainFailure, e.what());
        break;
      }
      if (e.code() == ErrorCode::DerivativeSingular) {
        record_end(Status::SingularOperator, e.what());
        break;
      }
      throw;
    }
    trace.coincident_nodes += static_cast<std::size_t>(r.coincident_columns);
    if (r.singular) {
      record_end(Status::SingularOperator, "singular linear operator at step " + std::to_string(n + 1));
      break;
    }

    const double step_norm = problem.norm_of(r.next - x);
    trace.iterates.push_back(r.next);
    trace.step_norms.push_back(step_norm);
    trace.step_rcond.push_back(r.rcond);
    trace.ill_conditioned.push_back(r.rcond < kIllConditionedRcond);
    x = std::move(r.next);

    try {
      fx = problem.evaluate(x, &trace.counters);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainFailure) throw;
      trace.residual_norms.push_back(std::numeric_limits<double>::quiet_NaN());
      record_end(Status::DomainFailure, e.what());
      break;
    }
    residual = problem.norm_of(fx);
    trace.residual_norms.push_back(residual);

    if (problem.norm_of(x) > kDivergedNorm || residual > kDivergedGrowth * min_residual) {
      record_end(Status::Diverged);
      break;
    }
    min_residual = std::min(min_residual, residual);
    if (step_norm <= stop.step_tolerance && residual > stop.residual_tolerance) {
      record_end(Status::ConvergedByStep);
      break;
    }
  }
  return trace;
}

AsisResult asis_solve(const Problem& problem, const Vector& x0, const StoppingCriteria& stop,
                      const DividedDifference& dd) {
  AdimensionalForm form = AdimensionalForm::build(problem, x0);
  IterationTrace inner = solve(form.map(), method::Steffensen{dd}, form.y0(), stop);
  inner.method = "asis-adimensional";

  IterationTrace outer;
  outer.method = "asis";
  outer.problem = problem.name();
  outer.iterates.reserve(inner.iterates.size());
  for (std::size_t n = 0; n < inner.iterates.size(); ++n) {
    outer.iterates.push_back(n == 0 ? x0 : form.to_original(inner.iterates[n]));
  }
  for (double r : inner.residual_norms) outer.residual_norms.push_back(form.scale() * r);
  for (std::size_t n = 0; n + 1 < outer.iterates.size(); ++n) {
    outer.step_norms.push_back(problem.norm_of(outer.iterates[n + 1] - outer.iterates[n]));
  }
  outer.step_rcond = inner.step_rcond;
  outer.ill_conditioned = inner.ill_conditioned;
  outer.counters = inner.counters;
  outer.fd_jacobian = inner.fd_jacobian;
  outer.coincident_nodes = inner.coincident_nodes;
  outer.finish(inner.status(), inner.message);
  return {std::move(form), std::move(inner), std::move(outer)};
}

}  // namespace asis
