#include "asis/problems.hpp"

#include <cmath>

namespace asis::problems {

Problem f1() {
  return Problem::scalar(
      "f1", [](double x) { return std::exp(x - 1.0) - 1.0; }, [](double x) { return std::exp(x - 1.0); },
      [](double x) { return std::exp(x - 1.0); });
}

Problem f2() {
  return Problem::scalar(
      "f2", [](double x) { return std::exp(2.0 * x - 1.0) - 1.0; },
      [](double x) { return 2.0 * std::exp(2.0 * x - 1.0); }, [](double x) { return 4.0 * std::exp(2.0 * x - 1.0); });
}

Problem example3() {
  Problem::Map f = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double u = y - x * x + 2.0;
    Vector out(2);
    out << -4.0 * x * u - 2.0 * (1.0 - x), 2.0 * u;
    return out;
  };
  Problem::JacobianMap j = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double u = y - x * x + 2.0;
    Matrix out(2, 2);
    out << -4.0 * u + 8.0 * x * x + 2.0, -4.0 * x, -4.0 * x, 2.0;
    return out;
  };
  return Problem("example3", 2, std::move(f), std::move(j));
}

Problem zigzag(double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "zigzag needs b > 0");
  Problem::Map f = [b](const Vector& v) {
    Vector out(2);
    out << v(0), b * v(1);
    return out;
  };
  Problem::JacobianMap j = [b](const Vector&) {
    Matrix out = Matrix::Zero(2, 2);
    out(0, 0) = 1.0;
    out(1, 1) = b;
    return out;
  };
  return Problem("zigzag", 2, std::move(f), std::move(j)).with_k2(0.0);
}

Problem linear(const Matrix& a, const Vector& rhs) {
  if (a.rows() != a.cols() || a.rows() != rhs.size()) {
    throw Error(ErrorCode::InvalidArgument, "linear problem needs square A and matching rhs");
  }
  const int m = static_cast<int>(a.rows());
  return Problem(
             "linear", m, [a, rhs](const Vector& x) -> Vector { return a * x - rhs; },
             [a](const Vector&) -> Matrix { return a; })
      .with_k2(0.0);
}

Problem adimensional_quadratic(double a) {
  return Problem::scalar(
             "q", [a](double s) { return (0.5 * a * s - 1.0) * s + 1.0; }, [a](double s) { return a * s - 1.0; },
             [a](double) { return a; })
      .with_k2(a);
}

Problem steffensen_trap(double a, double eta) {
  return Problem::scalar(
             "p", [a, eta](double t) { return (0.5 * a * t - 1.0) * t + eta; },
             [a](double t) { return a * t - 1.0; }, [a](double) { return a; })
      .with_k2(a);
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"f1", "f2", "example3", "zigzag"};
  return all;
}

Problem by_name(const std::string& name, double b) {
  if (name == "f1") return f1();
  if (name == "f2") return f2();
  if (name == "example3") return example3();
  if (name == "zigzag") return zigzag(b);
  throw Error(ErrorCode::InvalidArgument, "unknown problem '" + name + "'");
}

}  // namespace asis::problems
