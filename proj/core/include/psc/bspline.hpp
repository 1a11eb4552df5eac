#pragma once

#include <span>
#include <vector>

#include "psc/piecewise_poly.hpp"

namespace psc {

/// B-spline B[t_1, ..., t_n] with the normalization 0 <= B <= 1 and
/// int B = (t_n - t_1) / (n - 1), plus its probability-density rescaling.
///
/// Knots closer than 1e-12 * (t_n - t_1) are merged before the Cox-de Boor
/// recursion runs, so repeated knots follow the limit convention (0/0 terms
/// dropped). When all knots coincide the spline degenerates to a point mass
/// and `point_mass()` is set; the piecewise parts are then empty.
class SplineDensity {
 public:
  SplineDensity() = default;

  const std::vector<double>& knots() const { return knots_; }
  int order() const { return static_cast<int>(knots_.size()); }  // n
  bool point_mass() const { return point_mass_; }
  double point_mass_location() const { return knots_.empty() ? 0.0 : knots_.front(); }

  /// (n - 1) / (t_n - t_1), or 0 for a point mass.
  double normalization() const { return normalization_; }

  /// B itself.
  const PiecewisePolynomial& spline() const { return spline_; }
  /// B[t_1..t_{n-1}] and B[t_2..t_n]; empty for n < 3.
  const PiecewisePolynomial& left_spline() const { return left_; }
  const PiecewisePolynomial& right_spline() const { return right_; }

  double operator()(double t) const { return spline_(t); }

  /// normalization() * B as a piecewise polynomial.
  PiecewisePolynomial density() const;
  double density_at(double t) const { return normalization_ * spline_(t); }
  /// CDF of the normalized density (a step at the point-mass location).
  double cdf(double t) const;

 private:
  friend SplineDensity bspline_build(std::span<const double> knots);

  std::vector<double> knots_;
  bool point_mass_ = false;
  double normalization_ = 0.0;
  PiecewisePolynomial spline_, left_, right_;
};

/// Throws std::invalid_argument for fewer than 2 knots or unsorted knots.
SplineDensity bspline_build(std::span<const double> knots);

/// dB/dt as (n-2) (B[t_1..t_{n-1}]/(t_{n-1}-t_1) - B[t_2..t_n]/(t_n-t_2)).
/// Terms with a zero denominator are dropped. Requires n >= 3.
PiecewisePolynomial bspline_derivative(const SplineDensity& s);

/// Exact law of q*Hq for Haar q: the spline on the eigenvalues of H (any
/// order), rescaled to a density. A spread below 1e-13 * max|lambda| is a
/// point mass.
SplineDensity hermitian_form_spline(std::span<const double> eigenvalues);

struct DensityValue {
  double value = 0.0;
  bool point_mass = false;
  double location = 0.0;  ///< point-mass location when point_mass is set
};

DensityValue hermitian_form_density(std::span<const double> eigenvalues, double t);

struct WFunctionals {
  double w1 = 0.0;  ///< lambda_1 - lambda_n
  double w2 = 0.0;  ///< harmonic combination of the two edge gaps; 0 if either gap is 0
  double w3 = 0.0;  ///< lambda_2 - lambda_{n-1}
};

/// Eigenvalues in any order; requires n >= 4.
WFunctionals w_functionals(std::span<const double> eigenvalues);

/// Lower bound -(n-1)(n-2)(n-3) / (w1 w2 w3) on the second derivative of the
/// density of q*Hq on [lambda_{n-1}, lambda_2]. Returns -infinity when
/// w1 w2 w3 = 0. Requires n >= 4.
double concavity_floor(std::span<const double> eigenvalues);

}  // namespace psc
