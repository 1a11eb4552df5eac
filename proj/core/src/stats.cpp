#include "psc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace psc {

double clopper_pearson_upper(std::size_t k, std::size_t n, double confidence) {
  if (n == 0) return 1.0;
  if (k >= n) return 1.0;
  boost::math::beta_distribution<double> dist(static_cast<double>(k + 1),
                                              static_cast<double>(n - k));
  return boost::math::quantile(dist, confidence);
}

double clopper_pearson_lower(std::size_t k, std::size_t n, double confidence) {
  if (n == 0 || k == 0) return 0.0;
  boost::math::beta_distribution<double> dist(static_cast<double>(k),
                                              static_cast<double>(n - k + 1));
  return boost::math::quantile(dist, 1.0 - confidence);
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, std::abs(f - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return worst;
}

MeanEstimate estimate_mean(std::span<const double> values, double confidence) {
  MeanEstimate est;
  est.count = values.size();
  if (values.empty()) return est;
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  const double z = normal_quantile(0.5 + confidence / 2.0);
  est.half_width = z * est.stddev / std::sqrt(static_cast<double>(values.size()));
  return est;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope needs two or more paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace psc
