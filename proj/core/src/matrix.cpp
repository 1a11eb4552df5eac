#include "psc/matrix.hpp"

#include <cmath>

namespace psc {

void require_finite(const CMatrix& m, const char* what) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw std::invalid_argument(std::string(what) + " has a non-finite entry at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

Frame::Frame(CMatrix columns, double tolerance) : q_(std::move(columns)) {
  if (q_.cols() > q_.rows())
    throw DimensionError("frame has more columns than rows");
  require_finite(q_, "frame");
  const double defect = orthonormality_defect();
  if (!(defect <= tolerance))
    throw std::invalid_argument("frame columns are not orthonormal (defect " +
                                std::to_string(defect) + ")");
}

Frame Frame::trusted(CMatrix columns) {
  Frame f;
  f.q_ = std::move(columns);
  return f;
}

double Frame::orthonormality_defect() const {
  if (q_.cols() == 0) return 0.0;
  const CMatrix gram = q_.adjoint() * q_ - CMatrix::Identity(q_.cols(), q_.cols());
  return operator_norm(gram);
}

}  // namespace psc
