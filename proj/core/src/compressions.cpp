#include "psc/compressions.hpp"

#include <cmath>

namespace psc {

namespace {

void require_square(const CMatrix& m, const char* op) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(op) + " needs a square matrix");
}

}  // namespace

CMatrix compress(const CMatrix& a, const Frame& q) {
  require_square(a, "compress");
  if (q.dim() != a.rows()) throw DimensionError("compress: frame dimension does not match A");
  return q.matrix().adjoint() * a * q.matrix();
}

CMatrix schur_complement(const CMatrix& a, const Frame& q, double pivot_tol) {
  require_square(a, "schur_complement");
  if (q.dim() != a.rows())
    throw DimensionError("schur_complement: frame dimension does not match A");
  if (q.width() == 0) return a;
  const CMatrix& qm = q.matrix();
  const CMatrix pivot = qm.adjoint() * a * qm;
  const double norm_a = operator_norm(a);
  if (smallest_singular_value(pivot) <= pivot_tol * norm_a)
    throw SingularPivotError("schur_complement: Q*AQ is numerically singular");
  const CMatrix left = a * qm;               // A Q
  const CMatrix right = qm.adjoint() * a;    // Q* A
  const CMatrix solved = pivot.fullPivLu().solve(right);
  return a - left * solved;
}

CMatrix hermitian_part(const CMatrix& m, double theta) {
  require_square(m, "hermitian_part");
  // Snap cos/sin rounding residue so that grid angles such as pi/2 give an
  // exactly zero Hermitian part for a Hermitian m.
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  const Complex phase(snap(std::cos(theta)), -snap(std::sin(theta)));
  CMatrix h = 0.5 * (phase * m + std::conj(phase) * m.adjoint());
  // Exact symmetry: average with the adjoint to remove rounding asymmetry.
  return 0.5 * (h + h.adjoint());
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double singular_value(const CMatrix& m, Index k) {
  const Index p = std::min(m.rows(), m.cols());
  if (k < 1 || k > p)
    throw DimensionError("singular_value: index " + std::to_string(k) + " outside [1, " +
                         std::to_string(p) + "]");
  return singular_values(m)(k - 1);
}

double singular_value_or_zero(const CMatrix& m, Index k) {
  if (k < 1) throw DimensionError("singular_value_or_zero: index must be >= 1");
  if (k > std::min(m.rows(), m.cols())) return 0.0;
  return singular_values(m)(k - 1);
}

double smallest_singular_value(const CMatrix& m) {
  const RVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

RVector hermitian_eigenvalues(const CMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

Index numerical_rank(const CMatrix& m, double rel_tol) {
  const RVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

CMatrix shift(const CMatrix& a, Complex z) {
  require_square(a, "shift");
  CMatrix out = -a;
  out.diagonal().array() += z;
  return out;
}

}  // namespace psc
