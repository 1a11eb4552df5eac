#include "psc/rand_frames.hpp"

#include <cmath>
#include <numbers>

namespace psc {

Frame sample_haar_frame(Index m, Index k, RngStream& rng) {
  if (m < 1 || k < 0 || k > m)
    throw DimensionError("sample_haar_frame requires 0 <= k <= m (got m=" + std::to_string(m) +
                         ", k=" + std::to_string(k) + ")");
  if (k == 0) return Frame::trusted(CMatrix(m, 0));
  CMatrix g(m, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < m; ++i) g(i, j) = rng.complex_normal();

  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, k);
  const CMatrix& r = qr.matrixQR();
  for (Index j = 0; j < k; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return Frame::trusted(std::move(q));
}

CVector sample_unit_vector(Index m, RngStream& rng) {
  if (m < 1) throw DimensionError("sample_unit_vector requires m >= 1");
  CVector v(m);
  for (Index i = 0; i < m; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

CMatrix sample_ginibre(Index n, RngStream& rng, double scale) {
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = scale * rng.complex_normal();
  return g;
}

CMatrix sample_haar_unitary(Index n, RngStream& rng) {
  return sample_haar_frame(n, n, rng).matrix();
}

std::vector<CVector> polarization_net(int ell) {
  if (ell < 1) throw DimensionError("polarization_net requires ell >= 1");
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<CVector> net;
  net.reserve(static_cast<std::size_t>(3 * ell * ell - 2 * ell));
  for (int j = 0; j < ell; ++j) net.push_back(CVector::Unit(ell, j));
  for (int j = 0; j < ell; ++j) {
    for (int k = 0; k < ell; ++k) {
      if (j == k) continue;
      Complex phase = 1.0;
      for (int a = 0; a < 3; ++a) {
        CVector v = CVector::Zero(ell);
        v(j) = 1.0;
        v(k) = phase;
        net.push_back(std::move(v));
        phase *= omega;
      }
    }
  }
  return net;
}

NetReport verify_net_inequality(const CMatrix& b) {
  if (b.rows() != b.cols()) throw DimensionError("verify_net_inequality needs a square matrix");
  const int ell = static_cast<int>(b.rows());
  NetReport report;
  report.lhs = operator_norm(b);
  double best = 0.0;
  for (const CVector& v : polarization_net(ell)) best = std::max(best, std::abs(v.dot(b * v)));
  report.rhs = ell * best;
  report.holds = report.lhs <= report.rhs + 1e-10 * report.lhs;
  return report;
}

}  // namespace psc
