#pragma once

#include "asis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace asis {

/// Evaluation statistics gathered by a solver run.
struct EvalCounters {
  std::size_t residuals = 0;
  std::size_t jacobians = 0;
  std::size_t fd_jacobians = 0;
};

/// Rescaling x̃ ↦ k·F(c·x̃).  Both factors must be nonzero.
struct LinearScaling {
  double variable = 1.0;  // c
  double value = 1.0;     // k

  LinearScaling inverse() const { return {1.0 / variable, 1.0 / value}; }
};

/// A square nonlinear map F: ℝᵐ → ℝᵐ with optional analytic derivatives.
///
/// Values are immutable after construction; evaluation is reentrant.  When no
/// analytic Jacobian is supplied, central differences with step
/// max(1e-7, 1e-7·|xⱼ|) are used and counted in EvalCounters::fd_jacobians.
class Problem {
 public:
  using Map = std::function<Vector(const Vector&)>;
  using JacobianMap = std::function<Matrix(const Vector&)>;
  using ScalarFunction = std::function<double(double)>;

  Problem(std::string name, int dimension, Map map, std::optional<JacobianMap> jacobian = std::nullopt,
          Norm norm = Norm::Euclidean);

  /// Scalar problem f: ℝ → ℝ with optional f′ and f″.
  static Problem scalar(std::string name, ScalarFunction f, std::optional<ScalarFunction> df = std::nullopt,
                        std::optional<ScalarFunction> d2f = std::nullopt);

  Problem with_k2(double k2) const;
  Problem with_norm(Norm norm) const;
  Problem with_name(std::string name) const;

  const std::string& name() const { return name_; }
  int dimension() const { return impl_->dimension; }
  bool is_scalar() const { return impl_->dimension == 1; }
  Norm norm() const { return norm_; }
  std::optional<double> k2() const;
  bool has_analytic_jacobian() const { return impl_->jacobian.has_value(); }
  bool has_second_derivative() const { return impl_->second.has_value(); }
  const LinearScaling& scaling() const { return scaling_; }

  /// F(x).  Throws Error{DomainFailure} on non-finite output.
  Vector evaluate(const Vector& x, EvalCounters* counters = nullptr) const;
  double evaluate(double x, EvalCounters* counters = nullptr) const;

  /// F′(x), analytic when available.  Throws Error{DomainFailure} on
  /// non-finite entries.
  Matrix jacobian(const Vector& x, EvalCounters* counters = nullptr) const;
  double derivative(double x, EvalCounters* counters = nullptr) const;

  /// f″(x) for scalar problems: analytic when available, otherwise a central
  /// difference of the first derivative.
  double second_derivative(double x, EvalCounters* counters = nullptr) const;

  double norm_of(const Vector& v) const { return vector_norm(v, norm_); }
  double operator_norm_of(const Matrix& m) const { return operator_norm(m, norm_); }

  /// The problem x̃ ↦ k·F(c·x̃).  Scalings compose multiplicatively, so
  /// applying s then s.inverse() evaluates the original map at (c·c⁻¹)·x.
  Problem scaled(const LinearScaling& s) const;

 private:
  struct Impl {
    int dimension = 1;
    Map map;
    std::optional<JacobianMap> jacobian;
    std::optional<ScalarFunction> second;  // scalar problems only
  };

  Matrix fd_jacobian(const Vector& x, EvalCounters* counters) const;
  Vector raw_evaluate(const Vector& x) const;

  std::string name_;
  std::shared_ptr<const Impl> impl_;
  Norm norm_ = Norm::Euclidean;
  std::optional<double> base_k2_;
  LinearScaling scaling_;
};

/// Central-difference step for coordinate value `xj`.
inline double fd_step(double xj) { return std::max(1e-7, 1e-7 * std::abs(xj)); }

enum class KantorovichMode { Newton, Asis };

/// Where K₂ (bound on ‖F″‖) comes from.  An explicit value wins; otherwise
/// the problem's own bound; otherwise Jacobian variation is sampled over the
/// ball B(x₀, R), R defaulting to 2η.
struct K2Source {
  std::optional<double> explicit_value;
  std::optional<double> radius;
};

struct KantorovichData {
  double k2 = 0.0;
  double b = 0.0;    // ‖F′(x₀)⁻¹‖
  double eta = 0.0;  // ‖F′(x₀)⁻¹F(x₀)‖ (Newton) or B·‖F(x₀)‖ (ASIS)
  bool k2_sampled = false;

  double a() const { return k2 * b * eta; }
};

KantorovichData kantorovich_data(const Problem& problem, const Vector& x0, KantorovichMode mode,
                                 const K2Source& source = {});

/// Largest sampled ‖F′(p+δeⱼ) − F′(p−δeⱼ)‖/(2δ) over a deterministic point set in
/// B(x0, radius).  A lower proxy for sup‖F″‖ on the ball.
double sample_k2(const Problem& problem, const Vector& x0, double radius);

}  // namespace asis
