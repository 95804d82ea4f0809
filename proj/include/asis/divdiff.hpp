#pragma once

#include "asis/problem.hpp"

#include <vector>

namespace asis {

/// Which divided-difference operator F[x,y] to build.
struct DividedDifference {
  enum class Kind { Scalar, Componentwise, Integral };

  Kind kind = Kind::Componentwise;
  int nodes = 8;  // Gauss–Legendre nodes, Integral only

  static DividedDifference scalar() { return {Kind::Scalar, 0}; }
  static DividedDifference componentwise() { return {Kind::Componentwise, 0}; }
  static DividedDifference integral(int nodes = 8) { return {Kind::Integral, nodes}; }
};

const char* to_string(DividedDifference::Kind kind);

struct ScalarDividedDifference {
  double value = 0.0;
  bool coincident_nodes = false;
};

struct DividedDifferenceMatrix {
  Matrix op;
  int coincident_columns = 0;
};

/// True when |x − y| < 1e-14·max(1, |x|).
bool nodes_coincide(double x, double y);

/// (f(x) − f(y))/(x − y); falls back to f′(x) on coincident nodes.
ScalarDividedDifference scalar_dd(const Problem& f, double x, double y, EvalCounters* counters = nullptr);

/// Telescoping operator with
///   Hᵢⱼ = [Fᵢ(y₁..yⱼ, xⱼ₊₁..xₘ) − Fᵢ(y₁..yⱼ₋₁, xⱼ..xₘ)] / (yⱼ − xⱼ).
/// Satisfies H(x − y) = F(x) − F(y) up to rounding.  Columns with coincident
/// coordinates are filled with the Jacobian column ∂F/∂xⱼ at x.
/// `fx`, when given, must equal F(x) and saves one evaluation.
DividedDifferenceMatrix componentwise_dd(const Problem& f, const Vector& x, const Vector& y,
                                         EvalCounters* counters = nullptr, const Vector* fx = nullptr);

/// ∫₀¹ F′(x + θ(y − x)) dθ by Gauss–Legendre quadrature with `nodes` points.
DividedDifferenceMatrix integral_dd(const Problem& f, const Vector& x, const Vector& y, int nodes = 8,
                                    EvalCounters* counters = nullptr);

/// Dispatch on `dd.kind`.  Kind::Scalar requires a scalar problem.
DividedDifferenceMatrix divided_difference(const DividedDifference& dd, const Problem& f, const Vector& x,
                                           const Vector& y, EvalCounters* counters = nullptr,
                                           const Vector* fx = nullptr);

/// ‖H(x − y) − (F(x) − F(y))‖ / max(1, ‖F(x) − F(y)‖).
double verify_interpolatory(const Matrix& h, const Problem& f, const Vector& x, const Vector& y);

struct QuadratureRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss–Legendre rule mapped to [0, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace asis
