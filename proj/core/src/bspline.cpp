#include "psc/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psc {

namespace {

// (t - t0) * p on piece i, where p is stored in x = t - b_i.
void mul_linear(std::vector<double>& out, const std::vector<double>& p, double offset,
                double scale) {
  // (x + offset) * p(x) * scale
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += scale * offset * p[k];
    out[k + 1] += scale * p[k];
  }
}

}  // namespace

SplineDensity bspline_build(std::span<const double> raw) {
  const std::size_t n = raw.size();
  if (n < 2) throw std::invalid_argument("a B-spline needs at least 2 knots");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw[i])) throw std::invalid_argument("B-spline knots must be finite");
    if (i > 0 && raw[i] < raw[i - 1])
      throw std::invalid_argument("B-spline knots must be weakly increasing");
  }

  SplineDensity s;
  s.knots_.assign(raw.begin(), raw.end());
  const double spread = s.knots_.back() - s.knots_.front();
  if (!(spread > 0.0)) {
    s.point_mass_ = true;
    return s;
  }
  // Merge near-coincident knots onto the first of each cluster.
  const double merge_tol = 1e-12 * spread;
  for (std::size_t i = 1; i < n; ++i)
    if (s.knots_[i] - s.knots_[i - 1] <= merge_tol) s.knots_[i] = s.knots_[i - 1];
  const std::vector<double>& t = s.knots_;

  std::vector<double> breaks;
  for (double v : t)
    if (breaks.empty() || v > breaks.back()) breaks.push_back(v);
  const std::size_t pieces = breaks.size() - 1;
  auto break_of = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), v) -
                                    breaks.begin());
  };

  // Level 1: indicators of (t_j, t_{j+1}).
  std::vector<PiecewisePolynomial> level;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    auto p = PiecewisePolynomial::zero(breaks, 0);
    if (t[j + 1] > t[j]) p.coefficients()[break_of(t[j])][0] = 1.0;
    level.push_back(std::move(p));
  }
  std::vector<PiecewisePolynomial> previous;
  // Level m holds the splines on m + 1 consecutive knots.
  for (std::size_t m = 2; m < n; ++m) {
    std::vector<PiecewisePolynomial> next;
    for (std::size_t j = 0; j + m < n; ++j) {
      auto p = PiecewisePolynomial::zero(breaks, static_cast<int>(m - 1));
      const double dl = t[j + m - 1] - t[j];
      const double dr = t[j + m] - t[j + 1];
      for (std::size_t i = 0; i < pieces; ++i) {
        auto& out = p.coefficients()[i];
        if (dl > 0.0) mul_linear(out, level[j].coefficients()[i], breaks[i] - t[j], 1.0 / dl);
        if (dr > 0.0)
          mul_linear(out, level[j + 1].coefficients()[i], breaks[i] - t[j + m], -1.0 / dr);
      }
      next.push_back(std::move(p));
    }
    previous = std::move(level);
    level = std::move(next);
  }
  s.spline_ = std::move(level.front());
  if (n >= 3) {
    s.left_ = previous[0];
    s.right_ = previous[1];
  }
  s.normalization_ = static_cast<double>(n - 1) / spread;
  return s;
}

PiecewisePolynomial SplineDensity::density() const {
  PiecewisePolynomial d = spline_;
  d *= normalization_;
  return d;
}

double SplineDensity::cdf(double t) const {
  if (point_mass_) return t >= point_mass_location() ? 1.0 : 0.0;
  return std::clamp(normalization_ * spline_.integral_up_to(t), 0.0, 1.0);
}

PiecewisePolynomial bspline_derivative(const SplineDensity& s) {
  const int n = s.order();
  if (n < 3) throw std::invalid_argument("B-spline derivative needs at least 3 knots");
  if (s.point_mass()) return {};
  const auto& t = s.knots();
  const double dl = t[n - 2] - t[0];
  const double dr = t[n - 1] - t[1];
  PiecewisePolynomial a = s.left_spline();
  PiecewisePolynomial b = s.right_spline();
  a *= dl > 0.0 ? (n - 2) / dl : 0.0;
  b *= dr > 0.0 ? (n - 2) / dr : 0.0;
  return a - b;
}

SplineDensity hermitian_form_spline(std::span<const double> eigenvalues) {
  std::vector<double> knots(eigenvalues.begin(), eigenvalues.end());
  std::sort(knots.begin(), knots.end());
  if (knots.size() < 2) throw std::invalid_argument("need at least 2 eigenvalues");
  const double scale = std::max(std::abs(knots.front()), std::abs(knots.back()));
  if (knots.back() - knots.front() <= 1e-13 * scale) {
    const double c = 0.5 * (knots.front() + knots.back());
    std::fill(knots.begin(), knots.end(), c);
  }
  return bspline_build(knots);
}

DensityValue hermitian_form_density(std::span<const double> eigenvalues, double t) {
  const SplineDensity s = hermitian_form_spline(eigenvalues);
  DensityValue out;
  if (s.point_mass()) {
    out.point_mass = true;
    out.location = s.point_mass_location();
    return out;
  }
  out.value = s.density_at(t);
  return out;
}

WFunctionals w_functionals(std::span<const double> eigenvalues) {
  const std::size_t n = eigenvalues.size();
  if (n < 4) throw std::invalid_argument("w functionals need n >= 4");
  std::vector<double> l(eigenvalues.begin(), eigenvalues.end());
  std::sort(l.begin(), l.end(), std::greater<>());
  WFunctionals w;
  w.w1 = l[0] - l[n - 1];
  const double g1 = l[1] - l[n - 1];
  const double g2 = l[0] - l[n - 2];
  w.w2 = (g1 > 0.0 && g2 > 0.0) ? 1.0 / (1.0 / g1 + 1.0 / g2) : 0.0;
  w.w3 = l[1] - l[n - 2];
  return w;
}

double concavity_floor(std::span<const double> eigenvalues) {
  const double n = static_cast<double>(eigenvalues.size());
  const WFunctionals w = w_functionals(eigenvalues);
  const double denom = w.w1 * w.w2 * w.w3;
  if (!(denom > 0.0)) return -std::numeric_limits<double>::infinity();
  return -(n - 1) * (n - 2) * (n - 3) / denom;
}

}  // namespace psc
