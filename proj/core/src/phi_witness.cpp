// Witness search for the Stiefel supremum of the 2x2 functional Phi.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psc/compressions.hpp"
#include "psc/numerical_measure.hpp"
#include "psc/rand_frames.hpp"

namespace psc {

namespace {

// Pauli coordinates (h0; h1, h2, h3) of a Hermitian 2x2 matrix.
std::pair<double, Eigen::Vector3d> pauli(const CMatrix& h) {
  return {0.5 * (h(0, 0).real() + h(1, 1).real()),
          Eigen::Vector3d(h(0, 1).real(), -h(0, 1).imag(), 0.5 * (h(0, 0).real() - h(1, 1).real()))};
}

CVector from_bloch(const Eigen::Vector3d& s) {
  CVector x(2);
  const Complex off(s(0), s(1));
  if (s(2) >= 0.0) {
    const double x1 = std::sqrt(0.5 * (1.0 + s(2)));
    x << x1, off / (2.0 * x1);
  } else {
    const double x2 = std::sqrt(0.5 * (1.0 - s(2)));
    x << std::conj(off) / (2.0 * x2), x2;
  }
  return x / x.norm();
}

// Unit vector in span{a, b} with x* M x = z (z must lie in W of the compression).
CVector realize_in_span(const CMatrix& m, const CVector& a, const CVector& b, Complex z) {
  CVector e2 = b - a.dot(b) * a;
  const double len = e2.norm();
  if (len < 1e-12) return a;
  e2 /= len;
  CMatrix basis(a.size(), 2);
  basis.col(0) = a;
  basis.col(1) = e2;
  const CMatrix small = basis.adjoint() * m * basis;
  return basis * realize_2x2(small, z, 1e-7 * std::max(1.0, small.norm()));
}

struct WitnessSearch {
  const CMatrix& mp;
  int budget;
  int used = 0;
  double best_abs = -1.0;
  double best_value = 0.0;
  CMatrix best_u{};

  double evaluate(const CMatrix& u) {
    ++used;
    const CMatrix small = u.adjoint() * mp * u;
    const double v = phi_2x2(small);
    if (std::abs(v) > best_abs) {
      best_abs = std::abs(v);
      best_value = v;
      best_u = u;
    }
    return std::abs(v);
  }
  bool exhausted() const { return used >= budget; }
};

CMatrix orthonormalize(const CMatrix& cols) {
  Eigen::HouseholderQR<CMatrix> qr(cols);
  return qr.householderQ() * CMatrix::Identity(cols.rows(), cols.cols());
}

}  // namespace

CVector realize_2x2(const CMatrix& b, Complex z, double slack) {
  if (b.rows() != 2 || b.cols() != 2) throw DimensionError("realize_2x2 needs a 2x2 matrix");
  const CMatrix h1 = 0.5 * (b + b.adjoint());
  const CMatrix h2 = (b - b.adjoint()) / Complex(0.0, 2.0);
  const auto [c1, p1] = pauli(h1);
  const auto [c2, p2] = pauli(h2);
  Eigen::Matrix<double, 2, 3> p;
  p.row(0) = p1.transpose();
  p.row(1) = p2.transpose();
  const Eigen::Vector2d d(z.real() - c1, z.imag() - c2);
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double tiny = 1e-14 * std::max(1.0, svd.singularValues()(0));
  svd.setThreshold(tiny / std::max(svd.singularValues()(0), 1e-300));
  Eigen::Vector3d s0 = svd.singularValues()(0) > tiny ? Eigen::Vector3d(svd.solve(d))
                                                      : Eigen::Vector3d::Zero();
  if ((p * s0 - d).norm() > slack)
    throw PreconditionError("realize_2x2: target is not in the numerical range");
  double r2 = s0.squaredNorm();
  if (r2 > 1.0) {
    // Distance outside the ellipse, measured through the smallest active
    // stretch of the Bloch map.
    const Index rank = svd.rank();
    const double stretch = rank > 0 ? svd.singularValues()(rank - 1) : 0.0;
    if ((std::sqrt(r2) - 1.0) * stretch > slack)
      throw PreconditionError("realize_2x2: target is outside the numerical range");
    s0 /= std::sqrt(r2);
    r2 = 1.0;
  }
  const Eigen::Vector3d null_dir = svd.matrixV().col(2);
  const Eigen::Vector3d s = s0 + std::sqrt(std::max(0.0, 1.0 - r2)) * null_dir;
  return from_bloch(s.normalized());
}

PhiWitness phi_witness(const CMatrix& mp, const PhiSearchOptions& options) {
  if (mp.rows() != mp.cols()) throw DimensionError("phi_witness needs a square matrix");
  const Index m = mp.rows();
  if (m < 9) throw PreconditionError("phi_witness needs at least 9 rows (n >= 5)");
  const double norm = operator_norm(mp);
  const ConvexRegion region = numerical_range(mp, options.angles);
  const InnerRadius ir = inner_radius(region);
  if (!(ir.lo > 1e-12 * norm))
    throw PreconditionError("phi_witness: numerical range has empty interior");

  PhiWitness out;
  const double s9 = singular_value(mp, 9);
  out.bound = std::pow(s9 * ir.hi / 4.0, 2);
  out.bound_inner = std::pow(s9 * ir.lo / 4.0, 2);

  // Isosceles pair around the inscribed disk of the inner polygon.
  const Complex z0 = ir.center_lo;
  const Complex dir = std::abs(z0) > 1e-12 * norm ? z0 / std::abs(z0) : Complex(1.0, 0.0);
  const double r = ir.lo * (1.0 - 1e-6);
  const Complex zp = z0 + dir * Complex(1.0, 1.0) / std::sqrt(2.0) * r;
  const Complex zm = z0 + dir * Complex(1.0, -1.0) / std::sqrt(2.0) * r;

  // Inner-polygon vertices with their attaining vectors.
  std::vector<Complex> hull = region.inner.vertices;
  std::vector<CVector> hull_vec;
  for (Complex h : hull) {
    const auto it = std::find(region.touch.begin(), region.touch.end(), h);
    hull_vec.push_back(region.touch_vectors[it - region.touch.begin()]);
  }
  auto realize = [&](Complex z) -> CVector {
    // Triangle fan from vertex 0; take the triangle with the largest minimum
    // barycentric coordinate.
    std::size_t best_k = 1;
    double best_min = -1e300;
    std::array<double, 3> best_w{};
    for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
      const Complex a = hull[0], b = hull[k], c = hull[k + 1];
      const double det = std::imag(std::conj(b - a) * (c - a));
      if (det == 0.0) continue;
      const double wb = std::imag(std::conj(z - a) * (c - a)) / det;
      const double wc = std::imag(std::conj(b - a) * (z - a)) / det;
      const std::array<double, 3> w = {1.0 - wb - wc, wb, wc};
      const double mn = std::min({w[0], w[1], w[2]});
      if (mn > best_min) {
        best_min = mn;
        best_k = k;
        best_w = w;
      }
    }
    for (double& w : best_w) w = std::max(w, 0.0);
    const double edge = best_w[1] + best_w[2];
    if (edge < 1e-14) return hull_vec[0];
    const Complex y = (best_w[1] * hull[best_k] + best_w[2] * hull[best_k + 1]) / edge;
    const CVector wv = realize_in_span(mp, hull_vec[best_k], hull_vec[best_k + 1], y);
    const Complex target = best_w[0] * hull[0] + edge * y;
    return realize_in_span(mp, hull_vec[0], wv, target);
  };
  const CVector v = realize(zp);
  const CVector vp = realize(zm);

  // V1 spans {v, v', e_n}; M' e_n = 0 because column n of M' is the zero
  // first column of eps N.
  CMatrix gen1(m, 3);
  gen1 << v, vp, CVector::Unit(m, m - 4);
  const CMatrix v1 = orthonormalize(gen1);
  CMatrix gen2(m, 5);
  gen2 << v, vp, CVector::Unit(m, m - 4), mp * v, mp * vp;
  Eigen::HouseholderQR<CMatrix> qr2(gen2);
  const CMatrix full = qr2.householderQ();
  const CMatrix v2 = full.rightCols(m - 5);

  // y close to the numerical radius of V2* M' V2.
  const CMatrix c = v2.adjoint() * mp * v2;
  CVector y = CVector::Unit(c.rows(), 0);
  double y_best = -1.0;
  for (int j = 0; j < 64; ++j) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(c, 2.0 * std::numbers::pi * j / 64));
    const CVector cand = es.eigenvectors().col(c.rows() - 1);
    const double val = std::abs(cand.dot(c * cand));
    if (val > y_best) {
      y_best = val;
      y = cand;
    }
  }
  const CVector w2 = v2 * y;

  WitnessSearch search{mp, options.budget, 0, -1.0, 0.0, {}};
  auto frame_for = [&](const CVector& x) {
    CMatrix u(m, 2);
    u.col(0) = w2;
    u.col(1) = v1 * (x / x.norm());
    return u;
  };

  // Explicit construction: the segment between the two realizing directions.
  const CVector xp = v1.adjoint() * v, xm = v1.adjoint() * vp;
  for (int phase = 0; phase < 8; ++phase) {
    const Complex rot = std::polar(1.0, 2.0 * std::numbers::pi * phase / 8);
    for (int t = 0; t <= 20; ++t) {
      const CVector x = (1.0 - t / 20.0) * xp + (t / 20.0) * rot * xm;
      if (x.norm() < 1e-12) continue;
      search.evaluate(frame_for(x));
    }
  }
  out.construction_value = search.best_abs;

  // Random restarts on the sphere of C^3, then compass refinement.
  RngStream rng(options.seed, 0x70686977ULL);
  std::vector<std::pair<double, CVector>> starts;
  const int random_draws = std::max(0, options.budget / 5);
  for (int i = 0; i < random_draws && !search.exhausted(); ++i) {
    const CVector x = sample_unit_vector(3, rng);
    starts.emplace_back(search.evaluate(frame_for(x)), x);
  }
  starts.emplace_back(std::abs(phi_2x2(frame_for(xp).adjoint() * mp * frame_for(xp))), xp);
  std::sort(starts.begin(), starts.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  if (starts.size() > 4) starts.resize(4);
  const int per_start = options.budget / 10;
  for (auto& [score, x0] : starts) {
    CVector x = x0 / x0.norm();
    double step = 0.25;
    const int stop = std::min(options.budget, search.used + per_start);
    while (step > 1e-7 && search.used < stop) {
      bool improved = false;
      for (int k = 0; k < 6 && search.used < stop; ++k) {
        for (double sign : {1.0, -1.0}) {
          CVector cand = x;
          cand(k / 2) += sign * step * (k % 2 ? Complex(0.0, 1.0) : Complex(1.0, 0.0));
          cand /= cand.norm();
          const double val = search.evaluate(frame_for(cand));
          if (val > score) {
            score = val;
            x = cand;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  // Unconstrained local refinement over the whole Stiefel manifold.
  CMatrix u = search.best_u;
  double score = search.best_abs;
  double step = 0.1;
  while (!search.exhausted() && step > 1e-8) {
    bool improved = false;
    for (int trial = 0; trial < 8 && !search.exhausted(); ++trial) {
      CMatrix g(m, 2);
      for (Index j = 0; j < 2; ++j)
        for (Index i = 0; i < m; ++i) g(i, j) = rng.complex_normal();
      const CMatrix cand = orthonormalize(u + step * g);
      const double val = search.evaluate(cand);
      if (val > score) {
        score = val;
        u = cand;
        improved = true;
      }
    }
    step *= improved ? 1.5 : 0.6;
  }

  out.u = search.best_u;
  out.phi_value = search.best_value;
  out.evaluations = search.used;
  out.attained = std::abs(out.phi_value) >= out.bound;
  return out;
}

}  // namespace psc
