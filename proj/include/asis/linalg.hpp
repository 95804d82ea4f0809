#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>

namespace asis {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Norm { Euclidean, Max };

enum class ErrorCode {
  InvalidArgument,
  DomainFailure,
  DerivativeSingular,
  AlreadyAtRoot,
  HypothesesNotSatisfied,
  InsufficientData,
};

const char* to_string(ErrorCode code);

/// Error raised by constructors and single-shot operations.  Iterative
/// solvers never throw on numerical failure; they report a status instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

double vector_norm(const Vector& v, Norm norm);

/// Operator norm induced by `norm`.  Euclidean: spectral norm by power
/// iteration on AᵀA (relative tolerance 1e-12, at most 200 sweeps).
/// Max: exact maximum absolute row sum.
double operator_norm(const Matrix& a, Norm norm);

inline constexpr double kSingularRcond = 1e-14;

/// Dense LU with partial pivoting plus a reciprocal condition estimate.
/// A factorization is "singular" when rcond < 1e-14, a pivot is zero, or
/// the input is not finite.
class DenseFactorization {
 public:
  explicit DenseFactorization(const Matrix& a);

  bool singular() const noexcept { return singular_; }
  double rcond() const noexcept { return rcond_; }
  Eigen::Index size() const noexcept { return size_; }

  Vector solve(const Vector& rhs) const;
  Matrix solve(const Matrix& rhs) const;

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  Eigen::Index size_ = 0;
  double rcond_ = 0.0;
  bool singular_ = true;
};

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

Vector to_vector(std::span<const double> values);

}  // namespace asis
