#include "asis/problem.hpp"

#include <random>
#include <utility>
#include <vector>

namespace asis {

Problem::Problem(std::string name, int dimension, Map map, std::optional<JacobianMap> jacobian, Norm norm)
    : name_(std::move(name)), norm_(norm) {
  if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "problem dimension must be positive");
  if (!map) throw Error(ErrorCode::InvalidArgument, "problem needs an evaluator");
  auto impl = std::make_shared<Impl>();
  impl->dimension = dimension;
  impl->map = std::move(map);
  if (jacobian && *jacobian) impl->jacobian = std::move(jacobian);
  impl_ = std::move(impl);
}

Problem Problem::scalar(std::string name, ScalarFunction f, std::optional<ScalarFunction> df,
                        std::optional<ScalarFunction> d2f) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "scalar problem needs f");
  Map map = [f](const Vector& x) {
    Vector out(1);
    out(0) = f(x(0));
    return out;
  };
  std::optional<JacobianMap> jac;
  if (df && *df) {
    jac = [g = *df](const Vector& x) {
      Matrix out(1, 1);
      out(0, 0) = g(x(0));
      return out;
    };
  }
  Problem p(std::move(name), 1, std::move(map), std::move(jac));
  if (d2f && *d2f) {
    auto impl = std::make_shared<Impl>(*p.impl_);
    impl->second = std::move(d2f);
    p.impl_ = std::move(impl);
  }
  return p;
}

Problem Problem::with_k2(double k2) const {
  if (!(k2 >= 0.0) || !std::isfinite(k2)) throw Error(ErrorCode::InvalidArgument, "K2 must be finite and >= 0");
  Problem p = *this;
  // Stored in base coordinates so that later scalings transform it.
  p.base_k2_ = k2 / (std::abs(scaling_.value) * scaling_.variable * scaling_.variable);
  return p;
}

Problem Problem::with_norm(Norm norm) const {
  Problem p = *this;
  p.norm_ = norm;
  return p;
}

Problem Problem::with_name(std::string name) const {
  Problem p = *this;
  p.name_ = std::move(name);
  return p;
}

std::optional<double> Problem::k2() const {
  if (!base_k2_) return std::nullopt;
  return *base_k2_ * std::abs(scaling_.value) * scaling_.variable * scaling_.variable;
}

Vector Problem::raw_evaluate(const Vector& x) const {
  if (x.size() != impl_->dimension) {
    throw Error(ErrorCode::InvalidArgument, name_ + ": point has wrong dimension");
  }
  Vector out = scaling_.variable == 1.0 ? impl_->map(x) : impl_->map(scaling_.variable * x);
  if (out.size() != impl_->dimension) {
    throw Error(ErrorCode::InvalidArgument, name_ + ": evaluator returned wrong dimension");
  }
  if (scaling_.value != 1.0) out *= scaling_.value;
  if (!all_finite(out)) throw Error(ErrorCode::DomainFailure, name_ + ": non-finite evaluation");
  return out;
}

Vector Problem::evaluate(const Vector& x, EvalCounters* counters) const {
  if (!all_finite(x)) throw Error(ErrorCode::DomainFailure, name_ + ": non-finite point");
  if (counters) ++counters->residuals;
  return raw_evaluate(x);
}

double Problem::evaluate(double x, EvalCounters* counters) const {
  Vector v(1);
  v(0) = x;
  return evaluate(v, counters)(0);
}

Matrix Problem::fd_jacobian(const Vector& x, EvalCounters* counters) const {
  const int m = impl_->dimension;
  Matrix jac(m, m);
  Vector probe = x;
  for (int j = 0; j < m; ++j) {
    const double h = fd_step(x(j));
    probe(j) = x(j) + h;
    const Vector fp = raw_evaluate(probe);
    probe(j) = x(j) - h;
    const Vector fm = raw_evaluate(probe);
    probe(j) = x(j);
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  if (counters) {
    ++counters->fd_jacobians;
    counters->residuals += static_cast<std::size_t>(2 * m);
  }
  return jac;
}

Matrix Problem::jacobian(const Vector& x, EvalCounters* counters) const {
  if (!all_finite(x)) throw Error(ErrorCode::DomainFailure, name_ + ": non-finite point");
  if (x.size() != impl_->dimension) {
    throw Error(ErrorCode::InvalidArgument, name_ + ": point has wrong dimension");
  }
  Matrix jac;
  if (impl_->jacobian) {
    if (counters) ++counters->jacobians;
    const double c = scaling_.variable;
    jac = c == 1.0 ? (*impl_->jacobian)(x) : (*impl_->jacobian)(c * x);
    if (jac.rows() != impl_->dimension || jac.cols() != impl_->dimension) {
      throw Error(ErrorCode::InvalidArgument, name_ + ": Jacobian has wrong shape");
    }
    const double factor = scaling_.value * c;
    if (factor != 1.0) jac *= factor;
  } else {
    jac = fd_jacobian(x, counters);
  }
  if (!all_finite(jac)) throw Error(ErrorCode::DomainFailure, name_ + ": non-finite Jacobian");
  return jac;
}

double Problem::derivative(double x, EvalCounters* counters) const {
  Vector v(1);
  v(0) = x;
  return jacobian(v, counters)(0, 0);
}

double Problem::second_derivative(double x, EvalCounters* counters) const {
  if (!is_scalar()) throw Error(ErrorCode::InvalidArgument, "second derivative is scalar-only");
  if (impl_->second) {
    const double c = scaling_.variable;
    const double value = scaling_.value * c * c * (*impl_->second)(c * x);
    if (!std::isfinite(value)) throw Error(ErrorCode::DomainFailure, name_ + ": non-finite f''");
    return value;
  }
  const double h = std::max(1e-5, 1e-5 * std::abs(x));
  return (derivative(x + h, counters) - derivative(x - h, counters)) / (2.0 * h);
}

Problem Problem::scaled(const LinearScaling& s) const {
  if (s.variable == 0.0 || s.value == 0.0 || !std::isfinite(s.variable) || !std::isfinite(s.value)) {
    throw Error(ErrorCode::InvalidArgument, "scaling factors must be finite and nonzero");
  }
  Problem p = *this;
  p.scaling_.variable *= s.variable;
  p.scaling_.value *= s.value;
  return p;
}

double sample_k2(const Problem& problem, const Vector& x0, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "K2 sampling radius must be positive");
  }
  const int m = problem.dimension();
  std::vector<Vector> points{x0};
  for (int j = 0; j < m; ++j) {
    for (double f : {1.0, -1.0, 0.5, -0.5}) {
      Vector p = x0;
      p(j) += f * radius;
      points.push_back(std::move(p));
    }
  }
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  for (int k = 0; k < 24; ++k) {
    Vector dir(m);
    for (int j = 0; j < m; ++j) dir(j) = gauss(rng);
    const double n = dir.norm();
    if (n == 0.0) continue;
    const double r = radius * std::pow(unit(rng), 1.0 / m);
    points.push_back(x0 + (r / n) * dir);
  }

  const double delta = std::max(1e-7, 1e-4 * radius);
  double best = 0.0;
  for (const Vector& p : points) {
    for (int j = 0; j < m; ++j) {
      Vector hi = p, lo = p;
      hi(j) += delta;
      lo(j) -= delta;
      Matrix diff;
      try {
        diff = (problem.jacobian(hi) - problem.jacobian(lo)) / (2.0 * delta);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DomainFailure) continue;
        throw;
      }
      best = std::max(best, problem.operator_norm_of(diff));
    }
  }
  return best;
}

KantorovichData kantorovich_data(const Problem& problem, const Vector& x0, KantorovichMode mode,
                                 const K2Source& source) {
  const Vector f0 = problem.evaluate(x0);
  const double f0_norm = problem.norm_of(f0);
  if (f0_norm == 0.0) throw Error(ErrorCode::AlreadyAtRoot, "already at root");

  const DenseFactorization lu(problem.jacobian(x0));
  if (lu.singular()) throw Error(ErrorCode::DerivativeSingular, "derivative singular at x0");

  const int m = problem.dimension();
  KantorovichData data;
  data.b = problem.operator_norm_of(lu.solve(Matrix(Matrix::Identity(m, m))));
  data.eta = mode == KantorovichMode::Newton ? problem.norm_of(lu.solve(f0)) : data.b * f0_norm;

  if (source.explicit_value) {
    if (!(*source.explicit_value >= 0.0)) throw Error(ErrorCode::InvalidArgument, "K2 must be >= 0");
    data.k2 = *source.explicit_value;
  } else if (auto k2 = problem.k2(); k2 && !source.radius) {
    data.k2 = *k2;
  } else {
    data.k2 = sample_k2(problem, x0, source.radius.value_or(2.0 * data.eta));
    data.k2_sampled = true;
  }
  return data;
}

}  // namespace asis
