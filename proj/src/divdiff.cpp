#include "asis/divdiff.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace asis {

const char* to_string(DividedDifference::Kind kind) {
  switch (kind) {
    case DividedDifference::Kind::Scalar: return "scalar";
    case DividedDifference::Kind::Componentwise: return "componentwise";
    case DividedDifference::Kind::Integral: return "integral";
  }
  return "unknown";
}

bool nodes_coincide(double x, double y) { return std::abs(x - y) < 1e-14 * std::max(1.0, std::abs(x)); }

ScalarDividedDifference scalar_dd(const Problem& f, double x, double y, EvalCounters* counters) {
  if (!f.is_scalar()) throw Error(ErrorCode::InvalidArgument, "scalar_dd needs a scalar problem");
  if (nodes_coincide(x, y)) return {f.derivative(x, counters), true};
  const double fx = f.evaluate(x, counters);
  const double fy = f.evaluate(y, counters);
  return {(fx - fy) / (x - y), false};
}

DividedDifferenceMatrix componentwise_dd(const Problem& f, const Vector& x, const Vector& y, EvalCounters* counters,
                                         const Vector* fx) {
  const int m = f.dimension();
  if (x.size() != m || y.size() != m) throw Error(ErrorCode::InvalidArgument, "divided difference: dimension mismatch");

  DividedDifferenceMatrix out{Matrix(m, m), 0};
  std::optional<Matrix> jac;
  // Walk w₀ = x, wⱼ = (y₁..yⱼ, xⱼ₊₁..xₘ); column j is (F(wⱼ) − F(wⱼ₋₁))/(yⱼ − xⱼ).
  Vector w = x;
  Vector f_prev = fx ? *fx : f.evaluate(x, counters);
  for (int j = 0; j < m; ++j) {
    if (nodes_coincide(x(j), y(j))) {
      if (!jac) jac = f.jacobian(x, counters);
      out.op.col(j) = jac->col(j);
      ++out.coincident_columns;
      if (x(j) != y(j)) {
        w(j) = y(j);
        f_prev = f.evaluate(w, counters);
      }
      continue;
    }
    w(j) = y(j);
    Vector f_next = f.evaluate(w, counters);
    out.op.col(j) = (f_next - f_prev) / (y(j) - x(j));
    f_prev = std::move(f_next);
  }
  return out;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    // Recompute P'ₙ at the converged node for the weight.
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (t * p1 - p0) / (t * t - 1.0);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - t);
    rule.nodes[hi] = 0.5 * (1.0 + t);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.5;
  return rule;
}

DividedDifferenceMatrix integral_dd(const Problem& f, const Vector& x, const Vector& y, int nodes,
                                    EvalCounters* counters) {
  const int m = f.dimension();
  if (x.size() != m || y.size() != m) throw Error(ErrorCode::InvalidArgument, "divided difference: dimension mismatch");
  const QuadratureRule rule = gauss_legendre(nodes);
  const Vector direction = y - x;
  DividedDifferenceMatrix out{Matrix::Zero(m, m), 0};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    out.op += rule.weights[k] * f.jacobian(x + rule.nodes[k] * direction, counters);
  }
  return out;
}

DividedDifferenceMatrix divided_difference(const DividedDifference& dd, const Problem& f, const Vector& x,
                                           const Vector& y, EvalCounters* counters, const Vector* fx) {
  switch (dd.kind) {
    case DividedDifference::Kind::Scalar: {
      if (!f.is_scalar()) throw Error(ErrorCode::InvalidArgument, "scalar divided difference on a system");
      // Same quotient as componentwise_dd for m = 1; reuses F(x) when known.
      return componentwise_dd(f, x, y, counters, fx);
    }
    case DividedDifference::Kind::Componentwise: return componentwise_dd(f, x, y, counters, fx);
    case DividedDifference::Kind::Integral: return integral_dd(f, x, y, dd.nodes, counters);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown divided difference");
}

double verify_interpolatory(const Matrix& h, const Problem& f, const Vector& x, const Vector& y) {
  const Vector df = f.evaluate(x) - f.evaluate(y);
  return f.norm_of(h * (x - y) - df) / std::max(1.0, f.norm_of(df));
}

}  // namespace asis
