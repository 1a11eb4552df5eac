#pragma once

#include <array>
#include <span>
#include <vector>

#include "psc/matrix.hpp"

namespace psc {

/// Convex polygon, vertices counter-clockwise. Fewer than 3 vertices encode a
/// degenerate (point or segment) polygon with zero area.
struct Polygon {
  std::vector<Complex> vertices;

  double area() const;
  double diameter() const;
  bool contains(Complex z, double slack = 0.0) const;
};

/// Convex hull by monotone chain; collinear points dropped.
Polygon convex_hull(std::vector<Complex> points);

struct SupportPoint {
  double value = 0.0;  ///< lambda_max(H(e^{-i theta} M))
  Complex point;       ///< v* M v for the attaining unit eigenvector v
  CVector vector;      ///< v
};

/// Support function of W(M) in direction e^{i theta}.
SupportPoint support_function(const CMatrix& m, double theta);

/// Polygonal two-sided approximation of a planar convex set from K support
/// samples at uniformly spaced angles theta_j = 2 pi j / K.
///
/// The outer polygon is the intersection of the half-planes
/// Re(e^{-i theta_j} z) <= h_j and contains the set; the inner polygon is the
/// hull of boundary points and is contained in it. Every derived quantity is
/// therefore reported as an interval [inner, outer].
struct ConvexRegion {
  std::vector<double> angles;
  std::vector<double> support;
  std::vector<Complex> touch;
  /// Unit vectors attaining `touch` (only for regions built from a matrix).
  std::vector<CVector> touch_vectors;
  Polygon outer, inner;

  double area_lo() const { return inner.area(); }
  double area_hi() const { return outer.area(); }
  double resolution_error() const { return area_hi() - area_lo(); }
  double diameter_lo() const { return inner.diameter(); }
  double diameter_hi() const { return outer.diameter(); }
  /// Membership in the outer polygon up to `slack`.
  bool contains(Complex z, double slack = 0.0) const;
  /// Axis-aligned bounding box of the outer polygon: {xmin, xmax, ymin, ymax}.
  std::array<double, 4> bounding_box() const;
};

/// Builds the region from raw samples (angles must be uniform on [0, 2 pi)).
ConvexRegion region_from_support(std::vector<double> angles, std::vector<double> support,
                                 std::vector<Complex> touch);

/// Numerical range W(M) sampled at K >= 8 angles.
ConvexRegion numerical_range(const CMatrix& m, int k = 256);

struct ChebyshevCenter {
  double radius = 0.0;
  Complex center;
};

/// Largest disk inside {z : Re(e^{-i phi_j} z) <= h_j}: the 3-variable LP
/// max rho s.t. cos(phi_j) x + sin(phi_j) y + rho <= h_j, solved exactly by a
/// revised simplex on its dual (3 x 3 basis). A negative optimum (empty set)
/// is reported as radius 0, a set containing arbitrarily large disks as
/// +infinity.
ChebyshevCenter chebyshev_center(std::span<const double> normal_angles,
                                 std::span<const double> offsets);

struct InnerRadius {
  double lo = 0.0;  ///< inradius of the inner polygon
  double hi = 0.0;  ///< inradius of the outer polygon
  Complex center_lo, center_hi;
};

/// Radii below 1e-12 times the outer diameter are reported as 0.
InnerRadius inner_radius(const ConvexRegion& region);

/// Hull of the region and the origin.
ConvexRegion bowtie_zero(const ConvexRegion& region);

/// Minkowski sum with the closed disk of radius eps.
ConvexRegion minkowski_eps(const ConvexRegion& region, double eps);

}  // namespace psc
