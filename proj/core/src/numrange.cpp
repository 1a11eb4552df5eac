#include "psc/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "psc/compressions.hpp"

namespace psc {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double dist_to_segment(Complex z, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double s = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + s * d));
}

// Keeps the part of `poly` with Re(conj(u) z) <= h, u a unit normal.
std::vector<Complex> clip(const std::vector<Complex>& poly, Complex u, double h) {
  std::vector<Complex> out;
  const std::size_t m = poly.size();
  if (m == 0) return out;
  out.reserve(m + 1);
  auto side = [&](Complex z) { return (std::conj(u) * z).real() - h; };
  for (std::size_t i = 0; i < m; ++i) {
    const Complex p = poly[i];
    const Complex q = poly[(i + 1) % m];
    const double sp = side(p), sq = side(q);
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) out.push_back(p + (sp / (sp - sq)) * (q - p));
  }
  return out;
}

Polygon outer_polygon(const std::vector<double>& angles, const std::vector<double>& h) {
  double big = 1.0;
  for (double v : h) big = std::max(big, 4.0 * std::abs(v) + 1.0);
  std::vector<Complex> poly = {{-big, -big}, {big, -big}, {big, big}, {-big, big}};
  // Snapped normals keep exactly flat sets (h = 0 at +-pi/2) from losing vertices.
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  for (std::size_t j = 0; j < angles.size(); ++j)
    poly = clip(poly, Complex(snap(std::cos(angles[j])), snap(std::sin(angles[j]))), h[j]);
  return convex_hull(std::move(poly));
}

}  // namespace

double Polygon::area() const {
  const std::size_t m = vertices.size();
  if (m < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < m; ++i) a += cross(vertices[i], vertices[(i + 1) % m]);
  return 0.5 * std::abs(a);
}

double Polygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, std::abs(vertices[i] - vertices[j]));
  return d;
}

bool Polygon::contains(Complex z, double slack) const {
  const std::size_t m = vertices.size();
  if (m == 0) return false;
  if (m == 1) return std::abs(z - vertices[0]) <= slack;
  if (m == 2) return dist_to_segment(z, vertices[0], vertices[1]) <= slack;
  for (std::size_t i = 0; i < m; ++i) {
    const Complex e = vertices[(i + 1) % m] - vertices[i];
    if (cross(e, z - vertices[i]) < -slack * std::abs(e)) return false;
  }
  return true;
}

Polygon convex_hull(std::vector<Complex> pts) {
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return Polygon{pts};
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return Polygon{hull};
}

SupportPoint support_function(const CMatrix& m, double theta) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError("support_function needs a non-empty square matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m, theta));
  const Index top = m.rows() - 1;
  SupportPoint s;
  s.value = es.eigenvalues()(top);
  s.vector = es.eigenvectors().col(top);
  s.point = s.vector.dot(m * s.vector);
  return s;
}

bool ConvexRegion::contains(Complex z, double slack) const {
  for (std::size_t j = 0; j < angles.size(); ++j)
    if ((std::polar(1.0, -angles[j]) * z).real() > support[j] + slack) return false;
  return true;
}

std::array<double, 4> ConvexRegion::bounding_box() const {
  std::array<double, 4> box = {std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};
  for (Complex v : outer.vertices) {
    box[0] = std::min(box[0], v.real());
    box[1] = std::max(box[1], v.real());
    box[2] = std::min(box[2], v.imag());
    box[3] = std::max(box[3], v.imag());
  }
  return box;
}

ConvexRegion region_from_support(std::vector<double> angles, std::vector<double> support,
                                 std::vector<Complex> touch) {
  if (angles.size() != support.size() || angles.size() != touch.size())
    throw std::invalid_argument("region_from_support: sample arrays differ in length");
  ConvexRegion r;
  r.angles = std::move(angles);
  r.support = std::move(support);
  r.touch = std::move(touch);
  r.outer = outer_polygon(r.angles, r.support);
  r.inner = convex_hull(r.touch);
  return r;
}

ConvexRegion numerical_range(const CMatrix& m, int k) {
  if (k < 8) throw std::invalid_argument("numerical_range needs at least 8 angles");
  std::vector<double> angles(k), h(k);
  std::vector<Complex> touch(k);
  std::vector<CVector> vectors(k);
  for (int j = 0; j < k; ++j) {
    angles[j] = 2.0 * std::numbers::pi * j / k;
    SupportPoint s = support_function(m, angles[j]);
    h[j] = s.value;
    touch[j] = s.point;
    vectors[j] = std::move(s.vector);
  }
  ConvexRegion r = region_from_support(std::move(angles), std::move(h), std::move(touch));
  r.touch_vectors = std::move(vectors);
  return r;
}

ChebyshevCenter chebyshev_center(std::span<const double> phi, std::span<const double> h) {
  const std::size_t k = phi.size();
  if (h.size() != k) throw std::invalid_argument("chebyshev_center: size mismatch");
  ChebyshevCenter result;
  if (k == 0) {
    result.radius = std::numeric_limits<double>::infinity();
    return result;
  }

  auto column = [&](std::size_t j) {
    return Eigen::Vector3d(std::cos(phi[j]), std::sin(phi[j]), 1.0);
  };
  const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
  double scale = 1.0;
  for (double v : h) scale = std::max(scale, std::abs(v));

  // A starting basis is three normals whose convex hull contains the origin.
  auto try_basis = [&](std::array<std::size_t, 3> idx, Eigen::Matrix3d& binv) {
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) return false;
    Eigen::Matrix3d b;
    for (int c = 0; c < 3; ++c) b.col(c) = column(idx[c]);
    Eigen::FullPivLU<Eigen::Matrix3d> lu(b);
    if (!lu.isInvertible() || std::abs(b.determinant()) < 1e-10) return false;
    const Eigen::Vector3d y = lu.solve(rhs);
    if (y.minCoeff() < -1e-12) return false;
    binv = lu.inverse();
    return true;
  };

  std::array<std::size_t, 3> basis{};
  Eigen::Matrix3d binv;
  bool found = false;
  {
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < k; ++j) order[j] = j;
    auto wrapped = [&](std::size_t j) {
      double a = std::fmod(phi[j], 2.0 * std::numbers::pi);
      return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
    };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return wrapped(a) < wrapped(b); });
    std::vector<double> sorted(k);
    for (std::size_t j = 0; j < k; ++j) sorted[j] = wrapped(order[j]);
    auto nearest = [&](double target) {
      target = std::fmod(target, 2.0 * std::numbers::pi);
      auto it = std::lower_bound(sorted.begin(), sorted.end(), target);
      std::size_t hi = static_cast<std::size_t>(it - sorted.begin()) % k;
      std::size_t lo = (hi + k - 1) % k;
      auto gap = [&](std::size_t s) {
        const double d = std::abs(sorted[s] - target);
        return std::min(d, 2.0 * std::numbers::pi - d);
      };
      return gap(lo) < gap(hi) ? order[lo] : order[hi];
    };
    for (std::size_t i = 0; i < k && !found; ++i) {
      const double a = wrapped(i);
      basis = {i, nearest(a + 2.0 * std::numbers::pi / 3.0), nearest(a + 4.0 * std::numbers::pi / 3.0)};
      found = try_basis(basis, binv);
    }
    for (std::size_t i = 0; i < k && !found; ++i)
      for (std::size_t j = i + 1; j < k && !found; ++j)
        for (std::size_t l = j + 1; l < k && !found; ++l) {
          basis = {i, j, l};
          found = try_basis(basis, binv);
        }
  }
  if (!found) {
    // Normals do not surround the origin, so the set recedes along some
    // direction. Only opposite pairs of normals (strips) keep the radius finite.
    double radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const double c = std::cos(phi[i] - phi[j]);
        if (c > -1.0 + 1e-12) continue;
        const double width = h[i] + h[j];
        if (0.5 * width < radius) {
          radius = 0.5 * width;
          const Complex u = std::polar(1.0, phi[i]);
          result.center = u * (h[i] - 0.5 * width);
        }
      }
    result.radius = std::max(radius, 0.0);
    return result;
  }

  const double tol = 1e-13 * scale;
  const std::size_t max_iter = 50 * k + 100;
  Eigen::Vector3d pi = Eigen::Vector3d::Zero();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const Eigen::Vector3d cb(h[basis[0]], h[basis[1]], h[basis[2]]);
    pi = binv.transpose() * cb;
    const bool bland = iter > 10 * k;
    std::size_t enter = k;
    double best = -tol;
    for (std::size_t j = 0; j < k; ++j) {
      const double r = h[j] - column(j).dot(pi);
      if (r < best) {
        enter = j;
        if (bland) break;
        best = r;
      }
    }
    if (enter == k) break;
    const Eigen::Vector3d xb = binv * rhs;
    const Eigen::Vector3d d = binv * column(enter);
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      if (d(i) > 1e-14) {
        const double q = std::max(xb(i), 0.0) / d(i);
        if (q < ratio || (q == ratio && leave >= 0 && basis[i] < basis[leave])) {
          ratio = q;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      // Dual unbounded: the half-planes have empty intersection.
      return result;
    }
    basis[leave] = enter;
    Eigen::Matrix3d b;
    for (int c = 0; c < 3; ++c) b.col(c) = column(basis[c]);
    binv = b.inverse();
  }
  result.center = Complex(pi(0), pi(1));
  result.radius = std::max(pi(2), 0.0);
  return result;
}

InnerRadius inner_radius(const ConvexRegion& region) {
  InnerRadius out;
  const ChebyshevCenter outer = chebyshev_center(region.angles, region.support);
  out.hi = outer.radius;
  out.center_hi = outer.center;
  const auto& v = region.inner.vertices;
  if (v.size() >= 3) {
    std::vector<double> phi, off;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex e = v[(i + 1) % v.size()] - v[i];
      const Complex normal = Complex(e.imag(), -e.real()) / std::abs(e);  // outward for CCW
      phi.push_back(std::arg(normal));
      off.push_back((std::conj(normal) * v[i]).real());
    }
    const ChebyshevCenter inner = chebyshev_center(phi, off);
    out.lo = std::min(inner.radius, out.hi);
    out.center_lo = inner.center;
  }
  // A flat set carries rounding-level width; report it as flat.
  const double flat = 1e-12 * region.diameter_hi();
  if (out.hi <= flat) out.hi = 0.0;
  if (out.lo <= flat) out.lo = 0.0;
  return out;
}

ConvexRegion bowtie_zero(const ConvexRegion& region) {
  std::vector<double> h = region.support;
  std::vector<Complex> touch = region.touch;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j] < 0.0) {
      h[j] = 0.0;
      touch[j] = 0.0;
    }
  }
  ConvexRegion r = region_from_support(region.angles, std::move(h), std::move(touch));
  auto pts = r.inner.vertices;
  pts.push_back(0.0);
  r.inner = convex_hull(std::move(pts));
  return r;
}

ConvexRegion minkowski_eps(const ConvexRegion& region, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("minkowski_eps needs eps >= 0");
  std::vector<double> h = region.support;
  std::vector<Complex> touch = region.touch;
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] += eps;
    touch[j] += std::polar(eps, region.angles[j]);
  }
  return region_from_support(region.angles, std::move(h), std::move(touch));
}

}  // namespace psc
