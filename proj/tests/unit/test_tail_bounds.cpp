#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "../support/generators.hpp"
#include "psc/compressions.hpp"
#include "psc/numrange.hpp"
#include "psc/tail_bounds.hpp"

using namespace psc;

TEST(BoundConstants, TracedValues) {
  const BoundConstants c = BoundConstants::traced(10, 2);
  EXPECT_DOUBLE_EQ(c.c1, 1728.0);
  EXPECT_NEAR(c.c3, 4 * std::numbers::e * 24 * 9, 1e-9);
  EXPECT_NEAR(c.c2, 12 * 16 * 10 * 5.1 * 13 * 13 * 13 * std::pow(70.0 * 5 * 10, 2.5), 1e-6 * c.c2);
  EXPECT_TRUE(c.c2_c3_traced);
}

TEST(FirstOrderBound, Examples) {
  CMatrix a = gen::diagonal({3.0, 1.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  EXPECT_NEAR(first_order_bound(a, 2, 1e-4), 0.1728, 1e-12);
  EXPECT_EQ(first_order_bound(a, 2, 0.0), 0.0);
  EXPECT_EQ(first_order_bound(a, 2, 1.0), 1.0);
  EXPECT_EQ(first_order_bound(gen::jordan(4), 4, 1e-6), 1.0);
  EXPECT_THROW(first_order_bound(a, 11, 0.1), DimensionError);
}

TEST(SecondOrderBound, PreconditionsAndVacuousCases) {
  RngStream rng(71, 0);
  const CMatrix h = gen::hermitian(rng, 12);
  EXPECT_EQ(second_order_bound(h, 2, 1e-3, BoundConstants::traced(12, 2), numerical_range(h)), 1.0);
  const CMatrix g = gen::ginibre(rng, 12);
  const ConvexRegion w = numerical_range(g);
  EXPECT_THROW(second_order_bound(g, 5, 1e-3, BoundConstants::traced(12, 5), w), DimensionError);
  EXPECT_THROW(second_order_bound(g, 2, 0.0, BoundConstants::traced(12, 2), w), PreconditionError);
  EXPECT_THROW(second_order_bound(g, 2, operator_norm(g), BoundConstants::traced(12, 2), w),
               PreconditionError);
}

TEST(SecondOrderBound, EpsScalingWithSmallConstants) {
  // With tiny constants the clamp is inactive and the eps^2 log^2 shape shows.
  RngStream rng(72, 0);
  const CMatrix g = gen::ginibre(rng, 24);
  BoundConstants c = BoundConstants::traced(24, 4);
  c.c2 = 1e-6;
  c.c2_c3_traced = false;
  const ConvexRegion w = numerical_range(g);
  const double e = 1e-4;
  const double b1 = second_order_bound(g, 4, e, c, w), b2 = second_order_bound(g, 4, 2 * e, c, w);
  ASSERT_LT(b2, 1.0);
  const double s = singular_value(g, 3);
  const double n2 = std::pow(operator_norm(g), 2);
  const double l1 = std::log(c.c3 / e * 2 * n2 / s), l2 = std::log(c.c3 / (2 * e) * 2 * n2 / s);
  EXPECT_NEAR(b2 / b1, 4 * (l2 * l2) / (l1 * l1), 1e-10);
  EXPECT_GT(b2 / b1, 4 * std::pow(l2 / l1, 2) - 1e-12);
  EXPECT_LT(b2 / b1, 4.0);
}

TEST(SminTail, IdentityAndMonotonicity) {
  const std::vector<double> grid = {0.1, 0.5, 0.99, 1.01};
  const TailCurve id = smin_tail_empirical(CMatrix::Identity(6, 6), 2, 0.0, grid, 200, RngStream(1, 1));
  EXPECT_EQ(id.p_hat[0], 0.0);
  EXPECT_EQ(id.p_hat[2], 0.0);
  EXPECT_EQ(id.p_hat[3], 1.0);
  EXPECT_THROW(smin_tail_empirical(CMatrix::Identity(6, 6), 2, 0.0, grid, 99, RngStream(1, 1)),
               std::invalid_argument);

  std::vector<double> eps;
  for (int k = 1; k <= 5; ++k) eps.push_back(std::pow(10.0, -k));
  std::sort(eps.begin(), eps.end());
  const TailCurve j = smin_tail_empirical(gen::jordan(12), 2, 0.0, eps, 10000, RngStream(2, 2));
  for (std::size_t i = 1; i < eps.size(); ++i) EXPECT_GE(j.p_hat[i], j.p_hat[i - 1]);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_LE(j.ci_upper[i], j.first_order[i]) << eps[i];
    EXPECT_LE(j.ci_upper[i], j.second_order[i]) << eps[i];
  }
}

TEST(SminTail, CiShrinksLikeRootN) {
  const std::vector<double> grid = {0.2};
  RngStream rng(73, 0);
  const CMatrix g = gen::ginibre(rng, 8);
  const TailCurve a = smin_tail_empirical(g, 2, 0.0, grid, 4000, RngStream(3, 0));
  const TailCurve b = smin_tail_empirical(g, 2, 0.0, grid, 16000, RngStream(3, 1));
  ASSERT_GT(a.p_hat[0], 0.05);
  const double ratio = (a.ci_upper[0] - a.p_hat[0]) / (b.ci_upper[0] - b.p_hat[0]);
  EXPECT_NEAR(ratio, 2.0, 0.4);
}

TEST(Reduction, IdentityGinibreAndWidthZero) {
  const ReductionReport id = reduction_check(CMatrix::Identity(6, 6), 2, 0.1, 500, RngStream(4, 0));
  EXPECT_EQ(id.left_p, 0.0);
  EXPECT_TRUE(id.holds);
  RngStream rng(74, 0);
  const CMatrix g = gen::ginibre(rng, 12);
  const ReductionReport r = reduction_check(g, 3, 1e-2, 2000, RngStream(4, 1));
  EXPECT_TRUE(r.holds) << r.left_p << " vs " << r.right;
  // l = 1: right side is 3 Pr(|q*Aq| <= 2 eps) with A itself.
  const ReductionReport one = reduction_check(g, 1, 5e-2, 4000, RngStream(4, 2));
  EXPECT_TRUE(one.holds);
  EXPECT_NEAR(one.right, 3 * one.right_p, 1e-15);
  // Left side for l = 1 is Pr(|q*Aq| <= eps) <= Pr(|q*Aq| <= 2 eps).
  EXPECT_LE(one.left_p, one.right_p + 4 * std::sqrt(one.right_p / 4000 + 1e-12));
}

TEST(CompressionArea, Examples) {
  const DominanceReport deg = compression_area_check(Complex(0.5, 0.5) * CMatrix::Identity(4, 4), 1, 0.1, 100,
                                                     RngStream(5, 0));
  EXPECT_TRUE(deg.degenerate);
  EXPECT_TRUE(deg.holds);
  CMatrix b = CMatrix::Zero(3, 3);
  b.topLeftCorner(2, 2) = gen::nblock();
  b(2, 2) = Complex(1, 1);
  const DominanceReport r = compression_area_check(b, 1, 0.1, 5000, RngStream(5, 1));
  EXPECT_TRUE(r.holds) << r.ci_upper << " vs " << r.bound;
  const DominanceReport v = compression_area_check(b, 1, 0.999, 200, RngStream(5, 2));
  EXPECT_NEAR(v.bound, 1.0, 1e-5);
  EXPECT_THROW(compression_area_check(b, 2, 0.1, 10, RngStream(5, 3)), DimensionError);
}

TEST(SchurInnerRadius, RootsOfUnityAndPreconditions) {
  std::vector<Complex> roots;
  for (int k = 0; k < 12; ++k) roots.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 12));
  const DominanceReport r = schur_inner_radius_check(gen::diagonal(roots), 2, 5, 0.2, 500, RngStream(6, 0));
  EXPECT_TRUE(r.holds);
  const DominanceReport v = schur_inner_radius_check(gen::diagonal(roots), 2, 5, 0.99999, 50, RngStream(6, 1));
  EXPECT_NEAR(v.bound, 1.0, 1e-6);
  // Hermitian positive definite: W(A) is a segment away from 0, hull with 0 is flat.
  EXPECT_THROW(schur_inner_radius_check(gen::diagonal({1.0, 2.0, 3.0, 4.0}), 1, 3, 0.2, 10, RngStream(6, 2)),
               PreconditionError);
  EXPECT_THROW(schur_inner_radius_check(gen::diagonal(roots), 3, 3, 0.2, 10, RngStream(6, 3)),
               PreconditionError);
}

TEST(CornerSmin, ReadingsAndDegenerateCase) {
  const CornerReport full = corner_smin_check(5, 5, 0.3, 100, RngStream(7, 0));
  EXPECT_TRUE(full.usage.degenerate);
  // The inequality is close to tight for small theta, so the CI verdict is
  // exercised at theta = 1/2 where the margin is about 0.027.
  const CornerReport r = corner_smin_check(10, 3, 0.5, 10000, RngStream(7, 1));
  EXPECT_TRUE(r.usage.holds) << r.usage.ci_upper;
  // r = 1: |Q_11|^2 ~ Beta(1, n - 1), so the probability is 1 - (1 - theta^2/(n-1))^(n-1).
  const CornerReport one = corner_smin_check(10, 1, 0.3, 20000, RngStream(7, 3));
  const double exact = 1 - std::pow(1 - 0.09 / 9, 9);
  EXPECT_NEAR(one.usage.p_hat, exact, 4 * std::sqrt(exact * (1 - exact) / 20000));
  // sqrt(21)/0.5 > 1 >= sigma_r, so the literal reading has probability 0.
  EXPECT_EQ(r.literal_p, 0.0);
  EXPECT_FALSE(r.literal_holds);
  const CornerReport v = corner_smin_check(10, 3, 0.9999, 100, RngStream(7, 2));
  EXPECT_TRUE(v.usage.holds);
}

TEST(XLogX, Values) {
  EXPECT_EQ(xlogx_bound(0.0), 0.0);
  EXPECT_EQ(xlogx_bound(1.0), 1.0);
  EXPECT_EQ(xlogx_bound(3.0), 1.0);
  EXPECT_NEAR(xlogx_bound(0.1), 0.1 * (1 + std::log(10.0)), 1e-15);
}
