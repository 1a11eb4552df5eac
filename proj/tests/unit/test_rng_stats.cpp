#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "psc/parallel.hpp"
#include "psc/rng.hpp"
#include "psc/stats.hpp"

using namespace psc;

TEST(Philox, KnownAnswerVectors) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
  RngStream c(42, 7), d(42, 7);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(c.normal(), d.normal());
}

TEST(RngStream, DistinctStreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a(), y = b(), z = c();
    same_ab += x == y;
    same_ac += x == z;
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStream, SubstreamsAreDeterministicAndDistinct) {
  const RngStream root(5, 1);
  RngStream s1 = root.substream(3), s2 = root.substream(3), s3 = root.substream(4);
  EXPECT_EQ(s1(), s2());
  EXPECT_NE(s1.stream_id(), s3.stream_id());
  EXPECT_EQ(s1.seed(), 5u);
}

TEST(RngStream, UniformAndNormalMoments) {
  RngStream rng(1, 2);
  const int n = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    su2 += u * u;
    const double g = rng.normal();
    sn += g;
    sn2 += g * g;
  }
  EXPECT_NEAR(su / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(su2 / n, 1.0 / 3.0, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(double(n)));
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
}

TEST(RngStream, ComplexNormalHasUnitSecondMoment) {
  RngStream rng(9, 9);
  const int n = 100000;
  double s = 0;
  std::complex<double> m = 0;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    s += std::norm(z);
    m += z * z;
  }
  EXPECT_NEAR(s / n, 1.0, 0.02);
  EXPECT_NEAR(std::abs(m / double(n)), 0.0, 0.02);  // circular: E z^2 = 0
}

TEST(ClopperPearson, ClosedFormEdges) {
  // k = 0: upper = 1 - alpha^(1/n).
  EXPECT_NEAR(clopper_pearson_upper(0, 100), 1.0 - std::pow(0.01, 0.01), 1e-12);
  EXPECT_EQ(clopper_pearson_lower(0, 100), 0.0);
  EXPECT_EQ(clopper_pearson_upper(100, 100), 1.0);
  EXPECT_NEAR(clopper_pearson_lower(100, 100), std::pow(0.01, 0.01), 1e-12);
}

TEST(ClopperPearson, BracketsThePointEstimate) {
  for (std::size_t k : {1u, 5u, 50u, 99u}) {
    EXPECT_LT(clopper_pearson_lower(k, 100), k / 100.0);
    EXPECT_GT(clopper_pearson_upper(k, 100), k / 100.0);
  }
  // Doubling n shrinks the interval by about sqrt(2).
  const double w1 = clopper_pearson_upper(500, 5000) - 0.1;
  const double w2 = clopper_pearson_upper(1000, 10000) - 0.1;
  EXPECT_NEAR(w1 / w2, std::sqrt(2.0), 0.1);
}

TEST(Stats, NormalQuantile) {
  EXPECT_NEAR(normal_quantile(0.995), 2.5758293035489, 1e-9);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-14);
}

TEST(Stats, KsDistanceOfExactQuantiles) {
  std::vector<double> u(1000);
  for (int i = 0; i < 1000; ++i) u[i] = (i + 0.5) / 1000.0;
  EXPECT_NEAR(ks_distance(u, [](double x) { return x; }), 0.0005, 1e-12);
}

TEST(Stats, MeanEstimateAndSlope) {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  const MeanEstimate e = estimate_mean(v);
  EXPECT_DOUBLE_EQ(e.mean, 3.0);
  EXPECT_NEAR(e.stddev, std::sqrt(2.5), 1e-12);
  EXPECT_NEAR(e.half_width, normal_quantile(0.995) * std::sqrt(2.5 / 5), 1e-12);
  const std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  EXPECT_NEAR(fit_slope(x, y), 2.0, 1e-14);
}

TEST(Parallel, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) ASSERT_EQ(h.load(), 1);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Parallel, WorkersEnvironmentVariable) {
  setenv("WORKERS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  std::vector<int> v(50, 0);
  parallel_for(v.size(), [&](std::size_t i) {
    parallel_for(2, [&](std::size_t j) { v[i] += int(j) + 1; });
  });
  for (int x : v) ASSERT_EQ(x, 3);
  unsetenv("WORKERS");
  EXPECT_GE(worker_count(), 1u);
}
