#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace psc {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Shapes that do not fit the operation (k > m, non-square input, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot block Q*AQ too close to singular to invert.
class SingularPivotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition that is not a shape problem.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what = "matrix");

/// m x k matrix with orthonormal columns (an element of the Stiefel manifold).
///
/// Construction checks ||Q*Q - I|| <= tolerance in operator norm. A width-0
/// frame is allowed and stands for the empty subspace.
class Frame {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit Frame(CMatrix columns, double tolerance = kTolerance);

  /// Wraps columns without the orthonormality check. For callers that built
  /// the columns from a QR factorization themselves.
  static Frame trusted(CMatrix columns);

  const CMatrix& matrix() const { return q_; }
  Index dim() const { return q_.rows(); }
  Index width() const { return q_.cols(); }

  /// ||Q*Q - I|| in operator norm.
  double orthonormality_defect() const;

 private:
  Frame() = default;
  CMatrix q_;
};

/// Operator 2-norm (largest singular value).
double operator_norm(const CMatrix& m);

}  // namespace psc
