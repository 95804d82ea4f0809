#include "asis/adimensional.hpp"

#include <cmath>
#include <string>

namespace asis {

AdimensionalForm::AdimensionalForm(const Problem& problem, const Vector& x0, double scale, const Matrix& jacobian)
    : original_(problem), map_(problem), x0_(x0), scale_(scale), transform_(-jacobian / scale) {
  lu_ = std::make_shared<const DenseFactorization>(transform_);
  if (lu_->singular()) throw Error(ErrorCode::DerivativeSingular, "derivative singular at x0");
  y0_ = transform_ * x0_;

  const auto lu = lu_;
  const Problem f = problem;
  const double sigma = scale_;
  Problem::Map g = [f, lu, sigma](const Vector& y) -> Vector { return f.evaluate(lu->solve(y)) / sigma; };
  std::optional<Problem::JacobianMap> dg;
  if (problem.has_analytic_jacobian()) {
    // G′(y) = F′(x)·T⁻¹/σ, i.e. (T⁻ᵀ F′(x)ᵀ)ᵀ/σ.
    const Matrix t_transpose = transform_.transpose();
    const auto lu_t = std::make_shared<const DenseFactorization>(t_transpose);
    dg = [f, lu, lu_t, sigma](const Vector& y) -> Matrix {
      const Matrix jx = f.jacobian(lu->solve(y));
      return Matrix(lu_t->solve(Matrix(jx.transpose())).transpose()) / sigma;
    };
  }
  map_ = Problem("adim(" + problem.name() + ")", problem.dimension(), std::move(g), std::move(dg), problem.norm());
}

AdimensionalForm AdimensionalForm::build(const Problem& problem, const Vector& x0) {
  const Vector f0 = problem.evaluate(x0);
  const double sigma = problem.norm_of(f0);
  if (sigma < 1e-300) throw Error(ErrorCode::AlreadyAtRoot, "already at root");
  const Matrix j0 = problem.jacobian(x0);
  if (DenseFactorization(j0).singular()) throw Error(ErrorCode::DerivativeSingular, "derivative singular at x0");

  AdimensionalForm form(problem, x0, sigma, j0);
  const NormalizationReport report = check_normalization(form);
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidArgument,
                "adimensional form failed normalization: |‖G(y0)‖-1| = " + std::to_string(report.value_residual) +
                    ", ‖G'(y0)+I‖ = " + std::to_string(report.derivative_residual));
  }
  return form;
}

AdimensionalForm AdimensionalForm::with_scale(const Problem& problem, const Vector& x0, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  return AdimensionalForm(problem, x0, scale, problem.jacobian(x0));
}

Vector AdimensionalForm::to_adimensional(const Vector& x) const { return transform_ * x; }

Vector AdimensionalForm::to_original(const Vector& y) const { return lu_->solve(y); }

NormalizationReport check_normalization(const AdimensionalForm& form) {
  const Problem& g = form.map();
  const Vector& y0 = form.y0();
  const int m = g.dimension();

  NormalizationReport report;
  report.value_residual = std::abs(g.norm_of(g.evaluate(y0)) - 1.0);

  Matrix dg(m, m);
  Vector probe = y0;
  for (int j = 0; j < m; ++j) {
    const double h = fd_step(y0(j));
    probe(j) = y0(j) + h;
    const Vector gp = g.evaluate(probe);
    probe(j) = y0(j) - h;
    const Vector gm = g.evaluate(probe);
    probe(j) = y0(j);
    dg.col(j) = (gp - gm) / (2.0 * h);
  }
  report.derivative_residual = g.operator_norm_of(dg + Matrix::Identity(m, m));
  return report;
}

AdimensionalPolynomial adimensional_polynomial(double k2, double b, double eta, std::optional<double> k3) {
  if (!(b > 0.0) || !(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "B and eta must be positive");
  if (!(k2 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "K2 must be >= 0");
  AdimensionalPolynomial q;
  q.a = k2 * b * eta;
  if (k3) {
    if (!(*k3 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "K3 must be >= 0");
    q.degree = 3;
    q.b = *k3 * b * eta * eta;
  }
  return q;
}

NormalizationReport check_normalization(const AdimensionalPolynomial& q) {
  return {std::abs(q.value(0.0) - 1.0), std::abs(q.derivative(0.0) + 1.0)};
}

}  // namespace asis
