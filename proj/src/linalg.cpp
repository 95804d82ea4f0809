#include "asis/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace asis {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DomainFailure: return "domain failure";
    case ErrorCode::DerivativeSingular: return "derivative singular";
    case ErrorCode::AlreadyAtRoot: return "already at root";
    case ErrorCode::HypothesesNotSatisfied: return "hypotheses not satisfied";
    case ErrorCode::InsufficientData: return "insufficient data";
  }
  return "unknown";
}

double vector_norm(const Vector& v, Norm norm) {
  if (v.size() == 0) return 0.0;
  return norm == Norm::Max ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

namespace {

double spectral_norm(const Matrix& a) {
  const Eigen::Index n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  if (n == 1) return a.col(0).norm();
  const Matrix gram = a.transpose() * a;
  // Start from a vector with distinct entries so it is not orthogonal to a
  // coordinate-aligned dominant singular vector.
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 1.0 / static_cast<double>(i + 1);
  v.normalize();
  double lambda = v.dot(gram * v);
  for (int sweep = 0; sweep < 200; ++sweep) {
    Vector w = gram * v;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    const double next = v.dot(gram * v);
    const bool done = std::abs(next - lambda) <= 1e-12 * std::abs(next);
    lambda = next;
    if (done) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace

double operator_norm(const Matrix& a, Norm norm) {
  if (norm == Norm::Max) {
    if (a.rows() == 0) return 0.0;
    return a.cwiseAbs().rowwise().sum().maxCoeff();
  }
  return spectral_norm(a);
}

DenseFactorization::DenseFactorization(const Matrix& a) : size_(a.rows()) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidArgument, "factorization needs a square matrix");
  }
  if (size_ == 0 || !all_finite(a)) return;
  lu_.compute(a);
  const auto& packed = lu_.matrixLU();
  for (Eigen::Index i = 0; i < size_; ++i) {
    if (packed(i, i) == 0.0) return;
  }
  rcond_ = lu_.rcond();
  singular_ = !(rcond_ >= kSingularRcond);
}

Vector DenseFactorization::solve(const Vector& rhs) const {
  if (singular_) throw Error(ErrorCode::DerivativeSingular, "solve with a singular factorization");
  return lu_.solve(rhs);
}

Matrix DenseFactorization::solve(const Matrix& rhs) const {
  if (singular_) throw Error(ErrorCode::DerivativeSingular, "solve with a singular factorization");
  return lu_.solve(rhs);
}

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

Vector to_vector(std::span<const double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

}  // namespace asis
