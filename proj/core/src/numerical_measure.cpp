#include "psc/numerical_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "psc/compressions.hpp"
#include "psc/parallel.hpp"
#include "psc/stats.hpp"

namespace psc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> eigen_list(const CMatrix& m, double theta) {
  const RVector ev = hermitian_eigenvalues(hermitian_part(m, theta));
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

void require_density_input(const CMatrix& m, int ktheta) {
  if (m.rows() != m.cols()) throw DimensionError("density needs a square matrix");
  if (m.rows() < 4) throw DimensionError("density via Radon inversion needs n >= 4");
  if (ktheta < 64 || ktheta % 2 != 0)
    throw std::invalid_argument("ktheta must be even and at least 64");
}

}  // namespace

CMatrix regularize(const CMatrix& m, double eps) {
  if (m.rows() != m.cols()) throw DimensionError("regularize needs a square matrix");
  if (!(eps > 0.0)) throw std::invalid_argument("regularize needs eps > 0");
  const Index n = m.rows();
  CMatrix out = CMatrix::Zero(n + 4, n + 4);
  out.topLeftCorner(n, n) = m;
  out(n, n + 1) = 2.0 * eps;
  out(n + 2, n + 3) = 2.0 * eps;
  return out;
}

SplineDensity rho_theta(const CMatrix& m, double theta) {
  if (m.rows() != m.cols() || m.rows() < 2) throw DimensionError("rho_theta needs n >= 2");
  return hermitian_form_spline(eigen_list(m, theta));
}

double hilbert_spline_derivative(const SplineDensity& s, double t) {
  if (s.order() < 4) throw std::invalid_argument("Hilbert transform of rho' needs n >= 4");
  if (s.point_mass()) return 0.0;
  return HilbertEvaluator(s.density().derivative())(t);
}

DensityField::DensityField(const CMatrix& m, int ktheta) : ktheta_(ktheta) {
  require_density_input(m, ktheta);
  angles_.resize(ktheta);
  lo_.resize(ktheta);
  hi_.resize(ktheta);
  transforms_.reserve(ktheta);
  for (int j = 0; j < ktheta; ++j) {
    angles_[j] = 2.0 * std::numbers::pi * j / ktheta;
    const SplineDensity s = rho_theta(m, angles_[j]);
    lo_[j] = s.knots().front();
    hi_[j] = s.knots().back();
    if (s.point_mass()) {
      singular_ = true;
      transforms_.emplace_back(PiecewisePolynomial());
    } else {
      transforms_.emplace_back(s.density().derivative());
    }
  }
}

DensityEstimate DensityField::operator()(Complex z) const {
  DensityEstimate out;
  std::vector<double> t(ktheta_);
  for (int j = 0; j < ktheta_; ++j) {
    t[j] = (std::polar(1.0, -angles_[j]) * z).real();
    // Outside some projection strip means outside W(M).
    if (t[j] < lo_[j] || t[j] > hi_[j]) return out;
  }
  if (singular_) {
    out.value = kInf;
    return out;
  }
  double all = 0.0, even = 0.0;
  for (int j = 0; j < ktheta_; ++j) {
    const double h = transforms_[j](t[j]);
    all += h;
    if (j % 2 == 0) even += h;
  }
  const double full = all / (2.0 * ktheta_);
  const double half = even / ktheta_;
  out.gap = std::abs(full - half);
  out.value = full;
  if (full < 0.0 && full >= -1e-8) {
    out.value = 0.0;
    out.clipped = true;
  }
  return out;
}

DensityEstimate density(const CMatrix& m, Complex z, int ktheta) {
  return DensityField(m, ktheta)(z);
}

Complex DensityGrid::center(int i, int j) const {
  return {x0 + (i + 0.5) * (x1 - x0) / nx, y0 + (j + 0.5) * (y1 - y0) / ny};
}

double DensityGrid::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_area();
}

double DensityGrid::max_value() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double DensityGrid::max_gap() const {
  return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
}

DensityGrid density_field(const CMatrix& m, std::array<double, 4> box, int nx, int ny,
                          int ktheta) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("density grid needs nx, ny >= 1");
  const DensityField field(m, ktheta);
  DensityGrid g;
  g.x0 = box[0];
  g.x1 = box[1];
  g.y0 = box[2];
  g.y1 = box[3];
  g.nx = nx;
  g.ny = ny;
  g.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  g.gaps.assign(g.values.size(), 0.0);
  std::vector<char> clipped(g.values.size(), 0);
  parallel_for(g.values.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx % nx), j = static_cast<int>(idx / nx);
    const DensityEstimate e = field(g.center(i, j));
    g.values[idx] = e.value;
    g.gaps[idx] = e.gap;
    clipped[idx] = e.clipped;
  });
  for (char c : clipped) g.clipped += c;
  return g;
}

double density_sup_bound(const CMatrix& m, int ktheta) {
  require_density_input(m, ktheta);
  const double n = static_cast<double>(m.rows());
  double sum = 0.0;
  for (int j = 0; j < ktheta; ++j) {
    const WFunctionals w = w_functionals(eigen_list(m, 2.0 * std::numbers::pi * j / ktheta));
    if (!(w.w1 > 0.0 && w.w2 > 0.0 && w.w3 > 0.0)) return kInf;
    sum += std::log(4.0 * std::numbers::e * w.w1 / w.w3) / (w.w1 * w.w2);
  }
  const double integral = sum * 2.0 * std::numbers::pi / ktheta;
  return (n - 1) * (n - 2) * (n - 3) / (4.0 * std::numbers::pi * std::numbers::pi) * integral;
}

double l1_factor_quadrature(const CMatrix& m, int ktheta) {
  require_density_input(m, ktheta);
  double sum = 0.0;
  for (int j = 0; j < ktheta; ++j) {
    const WFunctionals w = w_functionals(eigen_list(m, 2.0 * std::numbers::pi * j / ktheta));
    if (!(w.w1 > 0.0 && w.w2 > 0.0)) return kInf;
    sum += 1.0 / (w.w1 * w.w2);
  }
  return sum * 2.0 * std::numbers::pi / ktheta;
}

double max_w1_over_w3(const CMatrix& m, int ktheta) {
  require_density_input(m, ktheta);
  double best = 0.0;
  for (int j = 0; j < ktheta; ++j) {
    const WFunctionals w = w_functionals(eigen_list(m, 2.0 * std::numbers::pi * j / ktheta));
    if (!(w.w3 > 0.0)) return kInf;
    best = std::max(best, w.w1 / w.w3);
  }
  return best;
}

SmallBallEstimate small_ball_empirical(const CMatrix& m, double eps, Complex z0,
                                       std::size_t samples, const RngStream& rng) {
  if (m.rows() != m.cols()) throw DimensionError("small_ball_empirical needs a square matrix");
  if (samples < 100) throw std::invalid_argument("small_ball_empirical needs at least 100 samples");
  const Index n = m.rows();
  std::vector<char> hit(samples, 0);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    CVector q(n);
    for (Index k = 0; k < n; ++k) q(k) = local.complex_normal();
    q /= q.norm();
    hit[i] = std::abs(q.dot(m * q) - z0) <= eps;
  });
  SmallBallEstimate out;
  out.samples = samples;
  for (char h : hit) out.hits += h;
  out.p_hat = static_cast<double>(out.hits) / samples;
  out.ci_upper = clopper_pearson_upper(out.hits, samples);
  return out;
}

double small_ball_bound(const CMatrix& m, double eps, int angles) {
  if (m.rows() != m.cols()) throw DimensionError("small_ball_bound needs a square matrix");
  const double norm = operator_norm(m);
  if (!(eps > 0.0) || !(eps < norm))
    throw PreconditionError("small_ball_bound needs 0 < eps < ||M||");
  const double n = static_cast<double>(m.rows());
  const double s9 = singular_value_or_zero(m, 9);
  if (!(s9 > 0.0)) return kInf;
  const double r = inner_radius(numerical_range(m, angles)).lo;
  if (!(r > 0.0)) return kInf;
  const double lg = std::log(4.0 * std::numbers::e * norm / eps);
  return eps * eps * lg * lg * 5.1 * std::pow(n + 3.0, 3) / (s9 * r);
}

double phi_2x2(const CMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2) throw DimensionError("phi_2x2 needs a 2x2 matrix");
  const Complex a = b(0, 0), bb = b(0, 1), c = b(1, 0), d = b(1, 1);
  const double det2 = std::norm(a * d - bb * c);
  const double inner = (std::conj(a) * d).real() - 0.5 * std::norm(bb) - 0.5 * std::norm(c);
  return det2 - inner * inner;
}

double l1_factor_bound_from_norm(double norm, double eps, double phi) {
  if (phi == 0.0) return kInf;
  return (4.0 * std::numbers::pi + 16.0 * std::log(std::pow(12.0, 0.25) * norm / eps)) /
         std::sqrt(std::abs(phi));
}

double l1_factor_bound(const CMatrix& mp, double eps, double phi) {
  return l1_factor_bound_from_norm(operator_norm(mp), eps, phi);
}

ConeCheck cone_segment_check(const std::array<double, 3>& p1, const std::array<double, 3>& p2,
                             double d) {
  const double r1 = std::hypot(p1[0], p1[1]), r2 = std::hypot(p2[0], p2[1]);
  const double base = std::hypot(p1[0] - p2[0], p1[1] - p2[1]);
  const double scale = std::max({r1, r2, d, 1e-300});
  if (!(d > 0.0) || std::abs(r1 - r2) > 1e-9 * scale || std::abs(base - d) > 1e-9 * scale ||
      p1[0] * p2[0] + p1[1] * p2[1] < -1e-12 * scale * scale)
    throw PreconditionError(
        "cone_segment_check: shadows must form a non-obtuse isosceles triangle with apex 0 and "
        "base d");
  // f(p1 + t (p2 - p1)) = A t^2 + B t + C
  const double dx = p2[0] - p1[0], dy = p2[1] - p1[1], dz = p2[2] - p1[2];
  const double qa = dx * dx + dy * dy - dz * dz;
  const double qb = 2.0 * (p1[0] * dx + p1[1] * dy - p1[2] * dz);
  const double qc = p1[0] * p1[0] + p1[1] * p1[1] - p1[2] * p1[2];
  auto f = [&](double t) { return (qa * t + qb) * t + qc; };
  std::vector<double> candidates = {0.0, 1.0};
  if (qa != 0.0) {
    const double v = -qb / (2.0 * qa);
    if (v > 0.0 && v < 1.0) candidates.push_back(v);
  }
  ConeCheck out;
  for (double t : candidates) {
    const double v = std::abs(f(t));
    if (v > out.abs_f || t == 0.0) {
      out.abs_f = v;
      out.t = t;
    }
  }
  for (int k = 0; k < 3; ++k) out.u[k] = p1[k] + out.t * (p2[k] - p1[k]);
  out.threshold = d * d / 8.0;
  out.holds = out.abs_f >= out.threshold * (1.0 - 1e-12);
  return out;
}

AppendixIntegral appendix_integral(double a, double b, double eps, double theta0) {
  if (!(a > 0.0) || !(eps > 0.0))
    throw PreconditionError("appendix_integral needs a > 0 and eps > 0");
  const double eps2 = eps * eps;
  auto integrand = [&](double th) {
    return 1.0 / std::max(eps2, std::abs(b + a * std::cos(2.0 * th - theta0)));
  };
  // Kinks where |g| crosses eps^2 or g crosses 0.
  std::vector<double> cuts = {0.0, std::numbers::pi};
  for (double level : {eps2, -eps2, 0.0}) {
    const double c = (level - b) / a;
    if (c < -1.0 || c > 1.0) continue;
    const double base = std::acos(c);
    for (double s : {base, -base}) {
      for (int k = -2; k <= 2; ++k) {
        const double th = 0.5 * (theta0 + s) + k * std::numbers::pi;
        if (th > 0.0 && th < std::numbers::pi) cuts.push_back(th);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  AppendixIntegral out;
  // Next to a cut the integrand can behave like 1/(x + eps^2/a), so each
  // piece is graded geometrically toward both ends before GK61 runs on it.
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo <= 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    std::vector<double> nodes = {lo, mid, hi};
    for (double h = 0.5 * (mid - lo); h > 1e-16; h *= 0.5) {
      nodes.push_back(lo + h);
      nodes.push_back(hi - h);
    }
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j)
      if (nodes[j + 1] > nodes[j])
        out.value += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            integrand, nodes[j], nodes[j + 1], 4, 1e-14);
  }
  const double gap = std::abs(a * a - b * b);
  if (gap == 0.0) {
    out.bound = kInf;
  } else if (a >= std::abs(b)) {
    const double lead = std::max(std::pow(gap, 0.25) / eps, 1.0);
    out.bound = (4.0 * std::numbers::pi + 16.0 * std::log(std::sqrt(2.0) * lead)) / std::sqrt(gap);
  } else {
    out.bound = std::numbers::pi / std::sqrt(gap);
  }
  out.holds = out.value <= out.bound + 1e-8;
  return out;
}

}  // namespace psc
