#pragma once

#include "asis/problem.hpp"

#include <memory>
#include <optional>

namespace asis {

struct NormalizationReport {
  double value_residual = 0.0;       // |‖G(y₀)‖ − 1|  or |q(0) − 1|
  double derivative_residual = 0.0;  // ‖G′(y₀) + I‖  or |q′(0) + 1|

  bool ok(double value_tol = 1e-12, double derivative_tol = 1e-8) const {
    return value_residual <= value_tol && derivative_residual <= derivative_tol;
  }
};

/// Scale-free form of a nonlinear map around a base point x₀:
///
///   σ = ‖F(x₀)‖,  T = −F′(x₀)/σ,  y = T·x,  G(y) = F(T⁻¹y)/σ,
///
/// so that ‖G(y₀)‖ = 1 and G′(y₀) = −I.  T is kept as an LU factorization;
/// T⁻¹ is never formed.
class AdimensionalForm {
 public:
  /// Throws Error{AlreadyAtRoot} when ‖F(x₀)‖ < 1e-300,
  /// Error{DerivativeSingular} when F′(x₀) is singular, and
  /// Error{InvalidArgument} when the normalization check fails.
  static AdimensionalForm build(const Problem& problem, const Vector& x0);

  /// Same construction with a caller-chosen scale in place of ‖F(x₀)‖ and no
  /// normalization check.  Used to exercise check_normalization.
  static AdimensionalForm with_scale(const Problem& problem, const Vector& x0, double scale);

  const Vector& base_point() const { return x0_; }
  const Vector& y0() const { return y0_; }
  double scale() const { return scale_; }
  const Matrix& forward() const { return transform_; }
  double forward_rcond() const { return lu_->rcond(); }

  /// The wrapped map G.  Its Jacobian is F′(T⁻¹y)T⁻¹/σ when F has an
  /// analytic Jacobian, finite differences otherwise.
  const Problem& map() const { return map_; }
  const Problem& original() const { return original_; }

  Vector to_adimensional(const Vector& x) const;
  Vector to_original(const Vector& y) const;

 private:
  AdimensionalForm(const Problem& problem, const Vector& x0, double scale, const Matrix& jacobian);

  Problem original_;
  Problem map_;
  Vector x0_;
  Vector y0_;
  double scale_ = 1.0;
  Matrix transform_;
  std::shared_ptr<const DenseFactorization> lu_;
};

/// Residuals of ‖G(y₀)‖ = 1 and G′(y₀) = −I.  G′(y₀) is measured by central
/// differences of G, independent of the analytic Jacobian path.
NormalizationReport check_normalization(const AdimensionalForm& form);

/// q(s) = (b/6)s³ + (a/2)s² − s + 1 (b = 0 for degree 2).
struct AdimensionalPolynomial {
  int degree = 2;
  double a = 0.0;
  double b = 0.0;

  double value(double s) const { return ((b / 6.0 * s + a / 2.0) * s - 1.0) * s + 1.0; }
  double derivative(double s) const { return (b / 2.0 * s + a) * s - 1.0; }
  double second_derivative(double s) const { return b * s + a; }
};

/// a = K₂Bη and, with K₃ given, b = K₃Bη².
AdimensionalPolynomial adimensional_polynomial(double k2, double b, double eta, std::optional<double> k3 = std::nullopt);

NormalizationReport check_normalization(const AdimensionalPolynomial& q);

}  // namespace asis
