#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "psc/compressions.hpp"
#include "psc/numrange.hpp"
#include "psc/pseudospectrum.hpp"

using namespace psc;

namespace {
const double kPi = std::numbers::pi;
}

TEST(InPseudospectrum, Examples) {
  const CMatrix zero = CMatrix::Zero(3, 3);
  EXPECT_TRUE(in_pseudospectrum(zero, Complex(0.06, 0.08), 0.1));
  EXPECT_FALSE(in_pseudospectrum(zero, Complex(0.06, 0.09), 0.1));
  EXPECT_TRUE(in_pseudospectrum(gen::jordan(2), 0.0, 1e-12));
  EXPECT_THROW(in_pseudospectrum(zero, 0.0, -1.0), std::invalid_argument);

  RngStream rng(81, 0);
  std::vector<Complex> eig = {0.0, Complex(1, 0.5), Complex(-0.3, 0.8)};
  const CMatrix u = sample_haar_unitary(3, rng);
  const CMatrix m = u * gen::diagonal(eig) * u.adjoint();
  for (int j = 0; j < 200; ++j) {
    const Complex z(gen::uniform(rng, -1, 1.5), gen::uniform(rng, -0.5, 1.2));
    double dist = 1e9;
    for (Complex e : eig) dist = std::min(dist, std::abs(z - e));
    if (std::abs(dist - 0.2) < 1e-9) continue;
    ASSERT_EQ(in_pseudospectrum(m, z, 0.2), dist <= 0.2);
  }
}

TEST(PseudospectrumArea, DiskCases) {
  const double eps = 1e-2;
  const AreaInterval one = pseudospectrum_area(Complex(0.3, 0.1) * CMatrix::Identity(1, 1), eps);
  EXPECT_LE(one.lo, kPi * eps * eps);
  EXPECT_GE(one.hi, kPi * eps * eps);
  EXPECT_LE(one.hi - one.lo, 0.05 * kPi * eps * eps);

  const AreaInterval two = pseudospectrum_area(gen::diagonal({0.0, 10.0}), 0.1);
  EXPECT_LE(two.lo, 2 * kPi * 0.01);
  EXPECT_GE(two.hi, 2 * kPi * 0.01);
  EXPECT_LE(two.hi - two.lo, 0.05 * kPi * 0.01);
  EXPECT_THROW(pseudospectrum_area(gen::jordan(2), 0.0), std::invalid_argument);
  AreaOptions coarse;
  coarse.resolution = 32;
  EXPECT_THROW(pseudospectrum_area(gen::jordan(2), 0.1, coarse), std::invalid_argument);
}

TEST(PseudospectrumArea, JordanBlockRadialOracle) {
  for (double eps : {1e-1, 1e-2}) {
    const double r = oracle::jordan2_radius(eps);
    const AreaInterval a = pseudospectrum_area(gen::jordan(2), eps);
    EXPECT_LE(a.lo, kPi * r * r);
    EXPECT_GE(a.hi, kPi * r * r);
  }
}

TEST(PseudospectrumArea, MonotoneInEpsOnSharedBox) {
  RngStream rng(82, 0);
  const CMatrix m = gen::ginibre(rng, 3);
  AreaOptions opt;
  opt.box = minkowski_eps(numerical_range(m, 64), 0.1).bounding_box();
  double prev_lo = 0;
  for (double eps : {1e-3, 1e-2, 3e-2, 1e-1}) {
    const AreaInterval a = pseudospectrum_area(m, eps, opt);
    ASSERT_GE(a.hi, prev_lo);
    ASSERT_LE(a.lo, a.hi);
    prev_lo = a.lo;
  }
}

TEST(PseudospectrumArea, SandwichForContractions) {
  // pi eps^2 <= area <= pi eps^{2/l} when ||M|| <= 1.
  RngStream rng(83, 0);
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix m = gen::ginibre(rng, 3);
    m /= operator_norm(m);
    const double eps = 0.05;
    const AreaInterval a = pseudospectrum_area(m, eps);
    const double slack = 0.05 * kPi * eps * eps;
    ASSERT_GE(a.hi, kPi * eps * eps - slack);
    ASSERT_LE(a.lo, kPi * std::pow(eps, 2.0 / 3.0) + slack);
  }
}

TEST(ShiftedMin, Examples) {
  const CMatrix d = gen::diagonal({0.0, 3.0});
  const ConvexRegion w = numerical_range(d, 64);
  const ShiftMinimum s1 = shifted_min(d, 1, w, 1e-6);
  EXPECT_NEAR(s1.s_k, 1.5, 1e-5);
  EXPECT_NEAR(s1.z_k.real(), 1.5, 1e-4);
  EXPECT_LE(s1.certificate_gap, 1e-6 + 1e-12);

  const CMatrix j = gen::jordan(5);
  const ShiftMinimum sj = shifted_min(j, 5, numerical_range(j, 64), 1e-6);
  EXPECT_LE(sj.s_k, 1e-5);

  RngStream rng(84, 0);
  const CMatrix h = gen::hermitian(rng, 4);
  EXPECT_LE(shifted_min(h, 4, numerical_range(h, 64), 1e-7).s_k, 1e-6);
  EXPECT_THROW(shifted_min(h, 5, numerical_range(h, 64), 1e-6), DimensionError);
}

TEST(ShiftedMin, CertificateAgainstDenseSampling) {
  RngStream rng(85, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = gen::ginibre(rng, 6);
    const ConvexRegion w = numerical_range(a, 64);
    const Index k = gen::integer(rng, 1, 3);
    const ShiftMinimum s = shifted_min(a, k, w, 1e-5);
    const auto box = w.bounding_box();
    for (int j = 0; j < 2000; ++j) {
      const Complex z(gen::uniform(rng, box[0], box[1]), gen::uniform(rng, box[2], box[3]));
      ASSERT_GE(singular_value(shift(a, z), k) + s.certificate_gap + 1e-12, s.s_k);
    }
  }
}

TEST(GrowthCheck, GrowthAwayFromTheMinimizer) {
  RngStream rng(86, 0);
  const CMatrix a = gen::ginibre(rng, 10);
  const ConvexRegion w = numerical_range(a, 128);
  const ShiftMinimum s = shifted_min(a, 3, w, 1e-6);
  EXPECT_TRUE(lemma57_check(a, 3, s.z_k, s).holds);
  EXPECT_NEAR(lemma57_check(a, 3, s.z_k, s).lhs, s.s_k, 1e-12);
  const auto box = minkowski_eps(w, 0.1).bounding_box();
  for (int j = 0; j < 100; ++j) {
    const Complex z(gen::uniform(rng, box[0], box[1]), gen::uniform(rng, box[2], box[3]));
    ASSERT_TRUE(lemma57_check(a, 3, z, s).holds);
  }
  EXPECT_THROW(lemma57_check(a, 6, 0.0, s), PreconditionError);
}

TEST(ExpectedArea, ScalarMatrixAndHermitianFloor) {
  const double eps = 1e-2;
  const ExpectedArea c = expected_area_mc(Complex(0.2, 0.3) * CMatrix::Identity(6, 6), 3, eps, 20, {},
                                          RngStream(9, 0));
  EXPECT_LE(c.mean_lo, kPi * eps * eps);
  EXPECT_GE(c.mean_hi, kPi * eps * eps);
  RngStream rng(87, 0);
  const ExpectedArea h = expected_area_mc(gen::hermitian(rng, 8), 2, eps, 20, {}, RngStream(9, 1));
  for (std::size_t i = 0; i < h.hi.size(); ++i) ASSERT_GE(h.hi[i], kPi * eps * eps);
  EXPECT_THROW(expected_area_mc(gen::hermitian(rng, 8), 2, eps, 19, {}, RngStream(9, 2)),
               std::invalid_argument);
}

TEST(ExpectedArea, ProbabilityEstimatorAgrees) {
  RngStream rng(88, 0);
  const CMatrix a = gen::ginibre(rng, 6);
  const double eps = 0.05;
  const ExpectedArea e = expected_area_mc(a, 2, eps, 60, {}, RngStream(10, 0));
  const MeanEstimate p = expected_area_by_probability(a, 2, eps, 200, 2000, RngStream(10, 1));
  const double mid = 0.5 * (e.mean_lo + e.mean_hi);
  EXPECT_LE(std::abs(mid - p.mean), std::hypot(e.ci, p.half_width) + (e.mean_hi - e.mean_lo));
}

TEST(TheoremBounds, FormulasAndDegenerateGeometry) {
  RngStream rng(89, 0);
  const CMatrix a = gen::ginibre(rng, 40);
  const BoundConstants c = BoundConstants::traced(40, 4);
  AreaGeometry g{2.0, 0.5, 0.3, 0.2};
  const double eps = 1e-3;
  const TheoremBounds t = theorem_bounds(a, 4, eps, c, g);
  const double item5 = 25 * std::pow(c.c2 * c.c1, 0.4) * std::log(40 * 2.0 / eps) * std::pow(2.0, 0.8) *
                       std::pow(eps, 1.2);
  EXPECT_NEAR(t.items[4], item5, 1e-9 * item5);
  const double lg = std::log(c.c3 * 2 * std::numbers::e * 4.0 / (eps * 0.2));
  EXPECT_NEAR(t.items[0], 4 * kPi * c.c2 * lg * lg * 4.0 / 0.04 * eps * eps, 1e-9 * t.items[0]);
  EXPECT_NEAR(t.items[1], t.items[0] * 0.2 / 0.5, 1e-9 * t.items[1]);
  for (bool b : t.applicable) EXPECT_TRUE(b);
  EXPECT_EQ(t.geometry.R, 2.0);
  // c1 eps = 24 * 64 * 39 * 1e-3 = 59.9 > R, so the r-eps bound does not apply.
  EXPECT_FALSE(t.lemma54_applicable);
  const double l54 = 2 * kPi * c.c1 * std::log(std::numbers::e * 2.0 / (c.c1 * eps)) * 0.5 * eps;
  EXPECT_NEAR(t.lemma54, l54, 1e-9 * std::abs(l54));

  const TheoremBounds flat = theorem_bounds(a, 4, eps, c, AreaGeometry{2.0, 0.0, 0.3, 0.0});
  EXPECT_TRUE(std::isinf(flat.items[0]));
  EXPECT_TRUE(std::isinf(flat.items[1]));
  EXPECT_TRUE(std::isinf(flat.items[2]));
  EXPECT_TRUE(std::isinf(flat.items[3]));
  EXPECT_EQ(flat.lemma54, 0.0);
  EXPECT_FALSE(flat.lemma54_applicable);

  const TheoremBounds small = theorem_bounds(gen::ginibre(rng, 12), 4, eps, c, g);
  for (bool b : small.applicable) EXPECT_FALSE(b);
}

TEST(RegimeExponent, CaseTable) {
  const AreaGeometry g{2.0, 0.5, 0.3, 0.2};
  EXPECT_FALSE(regime_exponent({}, g, 40, 4).has_value());
  const auto a = regime_exponent({true, false, false}, g, 40, 4);
  EXPECT_DOUBLE_EQ(a->beta, 1.2);
  EXPECT_EQ(a->item, 5);
  const auto ab = regime_exponent({true, true, false}, g, 40, 4);
  EXPECT_DOUBLE_EQ(ab->beta, 4.0 / 3.0);
  EXPECT_EQ(ab->item, 4);
  const auto ac = regime_exponent({true, false, true}, g, 40, 4);
  EXPECT_DOUBLE_EQ(ac->beta, 2.0);
  EXPECT_EQ(ac->item, 1);
  EXPECT_THROW(regime_exponent({true, true, false}, AreaGeometry{2.0, 0.0, 0.3, 0.2}, 40, 4),
               PreconditionError);
  EXPECT_THROW(regime_exponent({true, false, false}, g, 20, 4), DimensionError);
}
