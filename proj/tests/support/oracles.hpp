#pragma once

// Reference implementations used only by the tests. Each one computes its
// quantity by a route independent of the library code it checks.

#include <functional>
#include <vector>

#include "psc/matrix.hpp"

namespace psc::oracle {

/// Normalized B-spline value by the pointwise Cox-de Boor recursion,
/// 0/0 terms dropped. Knots sorted.
double cox_de_boor(const std::vector<double>& knots, double t);

/// (1/pi) p.v. int f(tau)/(t - tau) dtau over [a, b] with the singularity
/// subtracted: int (f(tau) - f(t))/(t - tau) + f(t) log|(t - a)/(t - b)|.
/// `splits` are points where f is not smooth; the integral is broken there.
double principal_value(const std::function<double(double)>& f, double a, double b, double t,
                       std::vector<double> splits);

/// Smallest singular value from the eigenvalues of M*M.
double smin_gram(const CMatrix& m);

/// Shoelace area of a polygon given in order (either orientation).
double shoelace(const std::vector<Complex>& vertices);

/// Convex hull area of points by gift wrapping.
double hull_area(std::vector<Complex> points);

/// Radius rho where sigma_min of [[z, -1], [0, z]] equals eps, |z| = rho.
double jordan2_radius(double eps);

/// Beta(a, b) CDF by numerical integration of the density (no special
/// functions).
double beta_cdf(double x, double a, double b);

}  // namespace psc::oracle
