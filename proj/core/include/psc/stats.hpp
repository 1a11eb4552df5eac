#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace psc {

/// One-sided Clopper-Pearson bounds for a binomial proportion with k
/// successes out of n trials. `confidence` is the one-sided level (0.99 for
/// the verdicts used throughout the library).
double clopper_pearson_upper(std::size_t k, std::size_t n, double confidence = 0.99);
double clopper_pearson_lower(std::size_t k, std::size_t n, double confidence = 0.99);

/// Standard normal quantile.
double normal_quantile(double p);

/// Kolmogorov-Smirnov statistic sup |F_n - F| of the samples against a
/// continuous CDF. Sorts a copy of the samples.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct MeanEstimate {
  double mean = 0.0;
  double stddev = 0.0;
  /// Two-sided normal-approximation half width at `confidence`.
  double half_width = 0.0;
  std::size_t count = 0;
};

MeanEstimate estimate_mean(std::span<const double> values, double confidence = 0.99);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace psc
