#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/LU>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "psc/compressions.hpp"
#include "psc/numrange.hpp"

using namespace psc;

namespace {

const double kPi = std::numbers::pi;

// Inradius of a convex CCW polygon by enumerating every triple of edge lines:
// the optimum disk touches three of them (independent of the LP).
double inradius_enumerate(const std::vector<Complex>& poly) {
  const std::size_t m = poly.size();
  std::vector<Complex> normal(m);
  std::vector<double> offset(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Complex e = poly[(i + 1) % m] - poly[i];
    normal[i] = Complex(e.imag(), -e.real()) / std::abs(e);
    offset[i] = (std::conj(normal[i]) * poly[i]).real();
  }
  double best = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        Eigen::Matrix3d lhs;
        Eigen::Vector3d rhs;
        const std::size_t idx[3] = {a, b, c};
        for (int r = 0; r < 3; ++r) {
          lhs.row(r) << normal[idx[r]].real(), normal[idx[r]].imag(), 1.0;
          rhs(r) = offset[idx[r]];
        }
        if (std::abs(lhs.determinant()) < 1e-12) continue;
        const Eigen::Vector3d x = lhs.partialPivLu().solve(rhs);
        bool feasible = x(2) >= 0;
        for (std::size_t j = 0; j < m && feasible; ++j)
          feasible = normal[j].real() * x(0) + normal[j].imag() * x(1) + x(2) <= offset[j] + 1e-12;
        if (feasible) best = std::max(best, x(2));
      }
  return best;
}

// Outer-polygon excess over a convex set of perimeter P sampled at K angles:
// each edge adds at most a triangle of area |e|^2 tan(2 pi / K) / 4.
double outer_excess_bound(double perimeter, int k) {
  return perimeter * perimeter * std::tan(2 * kPi / k) / 4;
}

double perimeter(const std::vector<Complex>& poly) {
  double p = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) p += std::abs(poly[(i + 1) % poly.size()] - poly[i]);
  return p;
}

}  // namespace

TEST(SupportFunction, Examples) {
  for (double theta : {0.0, 0.4, 2.0, 5.5}) {
    EXPECT_NEAR(support_function(gen::nblock(), theta).value, 1.0, 1e-14);
    const Complex c(0.3, -0.7);
    EXPECT_NEAR(support_function(c * CMatrix::Identity(3, 3), theta).value,
                (std::polar(1.0, -theta) * c).real(), 1e-14);
  }
  const CMatrix d = gen::diagonal({0.0, 1.0});
  EXPECT_NEAR(support_function(d, 0.0).value, 1.0, 1e-14);
  EXPECT_NEAR(support_function(d, kPi).value, 0.0, 1e-14);
}

TEST(SupportFunction, TouchPointAttainsTheSupport) {
  RngStream rng(41, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = sample_ginibre(5, rng);
    const double theta = gen::uniform(rng, 0, 2 * kPi);
    const SupportPoint s = support_function(m, theta);
    ASSERT_NEAR(s.vector.norm(), 1.0, 1e-12);
    ASSERT_LE(std::abs(s.vector.dot(m * s.vector) - s.point), 1e-12);
    ASSERT_NEAR((std::polar(1.0, -theta) * s.point).real(), s.value, 1e-12);
  }
}

TEST(NumericalRange, DiskTriangleAndSegment) {
  const ConvexRegion disk = numerical_range(gen::nblock(), 256);
  EXPECT_NEAR(disk.area_hi(), kPi, 2e-3);
  EXPECT_NEAR(disk.area_lo(), kPi, 2e-3);
  EXPECT_LE(disk.area_lo(), disk.area_hi());

  const ConvexRegion tri = numerical_range(gen::diagonal({0.0, 1.0, Complex(0, 1)}), 256);
  EXPECT_NEAR(tri.area_hi(), 0.5, 1e-9);
  EXPECT_NEAR(tri.area_lo(), 0.5, 1e-9);

  RngStream rng(42, 0);
  const ConvexRegion seg = numerical_range(gen::hermitian(rng, 4), 256);
  EXPECT_LE(seg.area_hi(), 1e-8);
  EXPECT_THROW(numerical_range(gen::nblock(), 4), std::invalid_argument);
}

TEST(NumericalRange, NormalMatrixIsHullOfSpectrum) {
  RngStream rng(43, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::integer(rng, 3, 7);
    std::vector<Complex> eig(n);
    for (auto& z : eig) z = Complex(gen::uniform(rng, -1, 1), gen::uniform(rng, -1, 1));
    const CMatrix u = sample_haar_unitary(n, rng);
    const CMatrix m = u * gen::diagonal(eig) * u.adjoint();
    const ConvexRegion w = numerical_range(m, 512);
    const double want = oracle::hull_area(eig);
    ASSERT_LE(w.area_lo(), want + 1e-9);
    ASSERT_GE(w.area_hi(), want - 1e-9);
    ASSERT_LE(w.area_hi() - w.area_lo(), outer_excess_bound(perimeter(w.inner.vertices), 512) + 1e-9);
  }
}

TEST(NumericalRange, ContainsSamplesAndEigenvalues) {
  RngStream rng(44, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix m = sample_ginibre(6, rng);
    const ConvexRegion w = numerical_range(m, 128);
    const double slack = 1e-8 * operator_norm(m);
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    for (Index i = 0; i < 6; ++i) ASSERT_TRUE(w.outer.contains(es.eigenvalues()(i), slack));
    for (int j = 0; j < 200; ++j) {
      const CVector q = sample_unit_vector(6, rng);
      ASSERT_TRUE(w.outer.contains(q.dot(m * q), slack));
    }
    for (Complex v : w.inner.vertices) ASSERT_TRUE(w.outer.contains(v, slack));
    // Inradius / diameter / area relations.
    const InnerRadius r = inner_radius(w);
    ASSERT_LE(r.lo, r.hi + 1e-12);
    ASSERT_LE(r.hi, w.diameter_hi() / 2 + 1e-12);
    ASSERT_LE(w.area_lo(), kPi * std::pow(w.diameter_hi() / 2, 2));
    ASSERT_GE(r.hi * w.diameter_hi() / 2, w.area_lo() / (2 * kPi) - w.resolution_error());
  }
}

TEST(InnerRadius, Examples) {
  const InnerRadius disk = inner_radius(numerical_range(gen::nblock(), 256));
  EXPECT_GE(disk.lo, std::cos(kPi / 256) - 1e-9);
  EXPECT_LE(disk.hi, 1.0 + 1e-9);
  EXPECT_LE(inner_radius(numerical_range(gen::diagonal({0.0, 1.0}), 256)).hi, 1e-8);
  const InnerRadius tri = inner_radius(numerical_range(gen::diagonal({0.0, 1.0, Complex(0, 1)}), 256));
  EXPECT_NEAR(tri.lo, (2.0 - std::sqrt(2.0)) / 2.0, 1e-9);
  EXPECT_NEAR(tri.hi, (2.0 - std::sqrt(2.0)) / 2.0, 1e-9);
}

TEST(InnerRadius, RandomTrianglesMatchClosedForm) {
  RngStream rng(45, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> v(3);
    for (auto& z : v) z = Complex(gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2));
    const double area = oracle::shoelace(v);
    if (area < 0.05) continue;
    const double perimeter = std::abs(v[0] - v[1]) + std::abs(v[1] - v[2]) + std::abs(v[2] - v[0]);
    const InnerRadius r = inner_radius(numerical_range(gen::diagonal(v), 64));
    ASSERT_NEAR(r.lo, 2 * area / perimeter, 1e-8) << trial;
  }
}

TEST(InnerRadius, LinearProgramAgreesWithGridSearch) {
  RngStream rng(46, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvexRegion w = numerical_range(sample_ginibre(5, rng), 64);
    const InnerRadius r = inner_radius(w);
    ASSERT_NEAR(r.hi, inradius_enumerate(w.outer.vertices), 1e-9 * (1 + r.hi));
    ASSERT_NEAR(r.lo, inradius_enumerate(w.inner.vertices), 1e-9 * (1 + r.lo));
  }
}

TEST(ChebyshevCenter, EmptyAndUnbounded) {
  // x <= -1 and -x <= -1 cannot both hold.
  const std::vector<double> a1 = {0.0, kPi}, h1 = {-1.0, -1.0};
  EXPECT_EQ(chebyshev_center(a1, h1).radius, 0.0);
  const std::vector<double> a2 = {0.0}, h2 = {1.0};
  EXPECT_TRUE(std::isinf(chebyshev_center(a2, h2).radius));
  const std::vector<double> a3 = {0.0, kPi / 2, kPi, 3 * kPi / 2}, h3 = {1.0, 2.0, 1.0, 2.0};
  const ChebyshevCenter box = chebyshev_center(a3, h3);
  EXPECT_NEAR(box.radius, 1.0, 1e-12);
  EXPECT_NEAR(box.center.real(), 0.0, 1e-12);
}

TEST(BowtieZero, Examples) {
  const ConvexRegion disk = numerical_range(gen::nblock(), 256);
  const ConvexRegion same = bowtie_zero(disk);
  EXPECT_NEAR(same.area_hi(), disk.area_hi(), 1e-12);
  EXPECT_NEAR(same.area_lo(), disk.area_lo(), 1e-12);

  const ConvexRegion seg = bowtie_zero(numerical_range(gen::diagonal({1.0, 2.0}), 64));
  EXPECT_LE(seg.area_hi(), 1e-10);
  EXPECT_NEAR(seg.diameter_hi(), 2.0, 1e-9);

  // Square [1,2]^2 from the normal matrix with those corners.
  const CMatrix sq = gen::diagonal({Complex(1, 1), Complex(2, 1), Complex(2, 2), Complex(1, 2)});
  const ConvexRegion b = bowtie_zero(numerical_range(sq, 256));
  const std::vector<Complex> hull = {0.0, Complex(2, 1), Complex(2, 2), Complex(1, 2)};
  const double want = oracle::shoelace(hull);
  EXPECT_NEAR(b.area_lo(), want, 1e-9);
  EXPECT_GE(b.area_hi(), want - 1e-9);
  EXPECT_LE(b.area_hi(), want + outer_excess_bound(perimeter(hull), 256));
  // Rejection sampling oracle.
  RngStream rng(47, 0);
  int hits = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const Complex p(2 * rng.uniform(), 2 * rng.uniform());
    hits += b.outer.contains(p);
  }
  EXPECT_NEAR(4.0 * hits / draws, want, 0.02);
  EXPECT_GT(want, numerical_range(sq, 256).area_lo());
}

TEST(MinkowskiEps, Examples) {
  const ConvexRegion disk = numerical_range(gen::nblock(), 256);
  const ConvexRegion grown = minkowski_eps(disk, 0.5);
  for (double h : grown.support) EXPECT_NEAR(h, 1.5, 1e-12);
  EXPECT_NEAR(grown.area_hi(), kPi * 2.25, 0.01);
  const ConvexRegion seg = numerical_range(gen::diagonal({0.0, 1.0}), 1024);
  for (double eps : {0.1, 0.01, 0.001}) {
    const ConvexRegion st = minkowski_eps(seg, eps);
    const double want = 2 * eps + kPi * eps * eps;
    EXPECT_LE(st.area_lo(), want + 1e-12);
    EXPECT_GE(st.area_hi(), want - 1e-12);
    EXPECT_LE(st.area_hi() - st.area_lo(), 0.01 * want);
  }
  const ConvexRegion same = minkowski_eps(disk, 0.0);
  EXPECT_NEAR(same.area_hi(), disk.area_hi(), 1e-12);
}
