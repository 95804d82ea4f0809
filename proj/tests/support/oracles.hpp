#pragma once

// Independent reference computations for the unit tests.  Nothing here calls
// into the library's numerical kernels; each oracle takes a separate route
// (SVD instead of power iteration, closed forms instead of iteration, and so
// on).

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline double max_row_sum(const Mat& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

/// ‖A⁻¹‖₂ = 1/σ_min.
inline double inverse_spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return 1.0 / svd.singularValues()(svd.singularValues().size() - 1);
}

/// Values frozen from a 50-digit mpmath run.
namespace frozen {
inline constexpr double kF1DividedDifference = 0.27267726798552462287;  // f₁[0, e⁻¹−1]
inline constexpr double kF1DdAtRounded = 0.27267733620154171744;       // f₁[0, −0.63212]
inline const std::vector<double> kNewtonF1{0.0, 1.7182818284590452354, 1.2058711271783062027, 1.019809091184598516,
                                           1.0001949109223162403, 1.0000000189938997595};
inline const std::vector<double> kAsisF1{0.0, 0.64536178791200577466, 0.92140370009368848374, 0.99505843345050042914,
                                         0.99997911475691172144, 0.9999999996252555495};
inline const std::vector<double> kSteffensenF1{0.0,
                                               2.3182004260880100348,
                                               2.1793578009228935022,
                                               1.9960600540873414633,
                                               1.7575738727871237392,
                                               1.4716711477022899432,
                                               1.1976307134560531551,
                                               1.0371831995582282072,
                                               1.0013698157145917271};
inline constexpr double kThresholdX0 = 0.68809464181756430040;  // 1 − log((1+√3)/2)
}  // namespace frozen

/// q(s) = (a/2)s² − s + 1 and its divided difference (a/2)(x + y) − 1.
struct Quadratic {
  double a;
  double value(double s) const { return (0.5 * a * s - 1.0) * s + 1.0; }
  double dd(double x, double y) const { return 0.5 * a * (x + y) - 1.0; }
};

/// Random quadratic map Fᵢ(x) = cᵢ + gᵢ·x + ½ xᵀQᵢx with symmetric Qᵢ.
struct QuadraticMap {
  Vec c;
  Mat g;
  std::vector<Mat> q;

  Vec operator()(const Vec& x) const {
    Vec out = c + g * x;
    for (std::size_t i = 0; i < q.size(); ++i) out(static_cast<Eigen::Index>(i)) += 0.5 * x.dot(q[i] * x);
    return out;
  }
  Mat jacobian(const Vec& x) const {
    Mat j = g;
    for (std::size_t i = 0; i < q.size(); ++i) j.row(static_cast<Eigen::Index>(i)) += (q[i] * x).transpose();
    return j;
  }

  static QuadraticMap random(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QuadraticMap f;
    f.c = Vec::NullaryExpr(m, [&] { return u(rng); });
    f.g = Mat::NullaryExpr(m, m, [&] { return u(rng); });
    for (int i = 0; i < m; ++i) {
      Mat a = Mat::NullaryExpr(m, m, [&] { return u(rng); });
      f.q.push_back(a + a.transpose());
    }
    return f;
  }
};

/// Exact Newton iterates of a scalar function with derivative df.
inline std::vector<double> scalar_newton(const std::function<double(double)>& f,
                                         const std::function<double(double)>& df, double x0, int steps) {
  std::vector<double> xs{x0};
  for (int k = 0; k < steps; ++k) xs.push_back(xs.back() - f(xs.back()) / df(xs.back()));
  return xs;
}

}  // namespace oracle
