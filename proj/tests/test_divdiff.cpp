#include "asis/divdiff.hpp"
#include "asis/problems.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace asis;

namespace {

Problem from_quadratic(const oracle::QuadraticMap& q, int m) {
  return Problem(
      "quadratic", m, [q](const Vector& x) -> Vector { return q(x); },
      [q](const Vector& x) -> Matrix { return q.jacobian(x); });
}

}  // namespace

TEST_CASE("scalar divided difference") {
  const Problem sq = Problem::scalar(
      "t^2", [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
  CHECK(scalar_dd(sq, 1.0, 3.0).value == 4.0);
  CHECK(scalar_dd(sq, 3.0, 1.0).value == 4.0);

  const Problem f1 = problems::f1();
  const double y = std::exp(-1.0) - 1.0;
  CHECK(scalar_dd(f1, 0.0, y).value == doctest::Approx(oracle::frozen::kF1DividedDifference).epsilon(1e-13));
  CHECK(scalar_dd(f1, 0.0, y).value == scalar_dd(f1, y, 0.0).value);

  // Approaching the diagonal tends to f′(x).
  for (double h : {1e-4, 1e-6, 1e-8}) {
    CHECK(scalar_dd(f1, 0.3, 0.3 + h).value == doctest::Approx(std::exp(0.3 - 1.0)).epsilon(1e-6 + h));
  }
  const ScalarDividedDifference same = scalar_dd(f1, 0.3, 0.3);
  CHECK(same.coincident_nodes);
  CHECK(same.value == std::exp(0.3 - 1.0));
  CHECK(nodes_coincide(1.0, 1.0 + 5e-15));
  CHECK_FALSE(nodes_coincide(1.0, 1.0 + 1e-13));
}

TEST_CASE("componentwise divided difference") {
  SUBCASE("linear map gives A") {
    Matrix a(3, 3);
    a << 2, -1, 0.5, 0, 3, 1, 4, 1, -2;
    const Problem lin = problems::linear(a, Vector::Zero(3));
    const DividedDifferenceMatrix h = componentwise_dd(lin, Vector{{0.1, 0.2, 0.3}}, Vector{{-1.0, 2.0, 0.7}});
    CHECK((h.op - a).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(h.coincident_columns == 0);
  }
  SUBCASE("m = 1 matches scalar_dd") {
    const Problem f1 = problems::f1();
    const DividedDifferenceMatrix h = componentwise_dd(f1, Vector::Constant(1, 0.2), Vector::Constant(1, -0.4));
    CHECK(h.op(0, 0) == doctest::Approx(scalar_dd(f1, 0.2, -0.4).value).epsilon(1e-15));
  }
  SUBCASE("example 3 satisfies the interpolatory identity") {
    const Problem ex3 = problems::example3();
    const Vector x = Vector::Zero(2), y{{0.1, -0.2}};
    const DividedDifferenceMatrix h = componentwise_dd(ex3, x, y);
    CHECK(verify_interpolatory(h.op, ex3, x, y) <= 1e-12);
  }
  SUBCASE("coincident coordinates use the Jacobian column") {
    const Problem ex3 = problems::example3();
    const Vector x{{0.5, 0.25}}, y{{0.5, -0.75}};
    const DividedDifferenceMatrix h = componentwise_dd(ex3, x, y);
    CHECK(h.coincident_columns == 1);
    CHECK((h.op.col(0) - ex3.jacobian(x).col(0)).norm() < 1e-14);
    CHECK(verify_interpolatory(h.op, ex3, x, y) <= 1e-12);
  }
  SUBCASE("evaluation count") {
    const Problem ex3 = problems::example3();
    EvalCounters c;
    componentwise_dd(ex3, Vector::Zero(2), Vector{{1.0, 1.0}}, &c);
    CHECK(c.residuals == 3);
  }
}

TEST_CASE("interpolatory identity on 1000 random cases") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> pick(0, 3);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Problem p = problems::f1();
    switch (pick(rng)) {
      case 0: p = problems::f1(); break;
      case 1: p = problems::example3(); break;
      case 2: p = problems::zigzag(0.1 + 0.8 * std::abs(u(rng)) / 1.5); break;
      default: {
        const int m = 1 + k % 5;
        p = from_quadratic(oracle::QuadraticMap::random(m, rng), m);
      }
    }
    const int m = p.dimension();
    const Vector x = Vector::NullaryExpr(m, [&] { return u(rng); });
    Vector y = Vector::NullaryExpr(m, [&] { return u(rng); });
    for (int j = 0; j < m; ++j) {
      if (std::abs(y(j) - x(j)) < 1e-10) y(j) = x(j) + 0.5;
    }
    const DividedDifferenceMatrix h = componentwise_dd(p, x, y);
    worst = std::max(worst, verify_interpolatory(h.op, p, x, y));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("integral divided difference") {
  SUBCASE("linear map is exact for any node count") {
    Matrix a(2, 2);
    a << 1.0, 2.0, -3.0, 0.5;
    const Problem lin = problems::linear(a, Vector::Ones(2));
    for (int q : {1, 2, 8}) {
      CHECK((integral_dd(lin, Vector::Zero(2), Vector{{1.0, -1.0}}, q).op - a).norm() < 1e-14);
    }
  }
  SUBCASE("quadratic maps are integrated exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      const int m = 2 + k % 3;
      const Problem p = from_quadratic(oracle::QuadraticMap::random(m, rng), m);
      const Vector x = Vector::NullaryExpr(m, [&] { return u(rng); });
      const Vector y = Vector::NullaryExpr(m, [&] { return u(rng); });
      CHECK(verify_interpolatory(integral_dd(p, x, y, 2).op, p, x, y) <= 1e-12);
    }
  }
  SUBCASE("f1 matches the scalar quotient") {
    const Problem f1 = problems::f1();
    const double v = integral_dd(f1, Vector::Zero(1), Vector::Constant(1, -0.63212), 20).op(0, 0);
    CHECK(v == doctest::Approx(scalar_dd(f1, 0.0, -0.63212).value).epsilon(1e-12));
    CHECK(v == doctest::Approx(oracle::frozen::kF1DdAtRounded).epsilon(1e-12));
  }
  SUBCASE("quadrature rule") {
    for (int n : {1, 2, 5, 8, 20}) {
      const QuadratureRule r = gauss_legendre(n);
      double wsum = 0.0, moment = 0.0;
      for (int i = 0; i < n; ++i) {
        wsum += r.weights[static_cast<std::size_t>(i)];
        moment += r.weights[static_cast<std::size_t>(i)] * std::pow(r.nodes[static_cast<std::size_t>(i)], 2 * n - 1);
      }
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(moment == doctest::Approx(1.0 / (2 * n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("verify_interpolatory flags a wrong operator") {
  const Problem id = problems::linear(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(verify_interpolatory(Matrix::Zero(2, 2), id, Vector{{0.0, 0.0}}, Vector{{0.6, 0.8}}) == doctest::Approx(1.0));
}

TEST_CASE("divided difference approximates the derivative") {
  // ‖F[x,y] − F′(x)‖ ≤ K₂‖x − y‖ with K₂ the bound on ‖F″‖ over the segment.
  const Problem f1 = problems::f1();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng), y = u(rng);
    if (nodes_coincide(x, y)) continue;
    const double k2 = std::exp(std::max(x, y) - 1.0);
    const double gap = std::abs(scalar_dd(f1, x, y).value - f1.derivative(x));
    CHECK(gap <= k2 * std::abs(x - y) * (1 + 1e-9) + 1e-15);
    // Mean-value form: f[x,y] − f′(x) = f″(ξ)(y − x)/2 with ξ between the nodes.
    const double lo = std::exp(std::min(x, y) - 1.0) / 2.0, hi = k2 / 2.0;
    const double ratio = (scalar_dd(f1, x, y).value - f1.derivative(x)) / (y - x);
    if (std::abs(x - y) > 1e-3) {
      CHECK(ratio >= lo * (1 - 1e-6));
      CHECK(ratio <= hi * (1 + 1e-6));
    }
  }
}
