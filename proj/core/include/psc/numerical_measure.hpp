#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "psc/bspline.hpp"
#include "psc/matrix.hpp"
#include "psc/numrange.hpp"
#include "psc/rng.hpp"

namespace psc {

/// M (+) eps N (+) eps N with N = [[0, 2], [0, 0]]; size (n + 4).
CMatrix regularize(const CMatrix& m, double eps);

/// Density of q* H(e^{-i theta} M) q, i.e. the theta-projection of the
/// numerical measure.
SplineDensity rho_theta(const CMatrix& m, double theta);

/// Hilbert transform of the derivative of the spline density at t.
/// Requires at least 4 knots.
double hilbert_spline_derivative(const SplineDensity& s, double t);

struct DensityEstimate {
  double value = 0.0;
  /// |value - value with every second angle|.
  double gap = 0.0;
  /// Quadrature returned a small negative number that was clipped to 0.
  bool clipped = false;
};

/// Density of q*Mq evaluated through the Radon inversion formula with a
/// K-angle trapezoid rule. Angle data are computed once; evaluation is then
/// cheap enough for grids.
class DensityField {
 public:
  DensityField(const CMatrix& m, int ktheta = 512);

  DensityEstimate operator()(Complex z) const;

  int ktheta() const { return ktheta_; }
  /// Some angle has a point-mass projection (the measure lives on a line).
  bool singular() const { return singular_; }

 private:
  int ktheta_;
  bool singular_ = false;
  std::vector<double> angles_, lo_, hi_;
  std::vector<HilbertEvaluator> transforms_;
};

/// One-shot version of DensityField. n >= 4, ktheta >= 64 and even.
DensityEstimate density(const CMatrix& m, Complex z, int ktheta = 512);

struct DensityGrid {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  int nx = 0, ny = 0;
  /// Row-major values at cell centers, index j * nx + i.
  std::vector<double> values, gaps;
  std::size_t clipped = 0;

  Complex center(int i, int j) const;
  double cell_area() const { return (x1 - x0) / nx * (y1 - y0) / ny; }
  /// Midpoint-rule mass.
  double mass() const;
  double max_value() const;
  double max_gap() const;
};

DensityGrid density_field(const CMatrix& m, std::array<double, 4> box, int nx, int ny,
                          int ktheta = 512);

/// (n-1)(n-2)(n-3)/(4 pi^2) * int (1/(w1 w2)) log(4e w1/w3) dtheta by the
/// trapezoid rule; +infinity if any w vanishes on the grid. n >= 4.
double density_sup_bound(const CMatrix& m, int ktheta = 512);

/// Trapezoid value of int_0^{2 pi} dtheta / (w1(theta) w2(theta)).
double l1_factor_quadrature(const CMatrix& m, int ktheta = 512);

/// max over the angle grid of w1(theta) / w3(theta).
double max_w1_over_w3(const CMatrix& m, int ktheta = 512);

struct SmallBallEstimate {
  std::size_t hits = 0;
  std::size_t samples = 0;
  double p_hat = 0.0;
  double ci_upper = 0.0;  ///< one-sided 99% Clopper-Pearson
};

/// Fraction of Haar unit vectors q with |q*Mq - z0| <= eps. Sample i uses
/// rng.substream(i).
SmallBallEstimate small_ball_empirical(const CMatrix& m, double eps, Complex z0,
                                       std::size_t samples, const RngStream& rng);

/// eps^2 log^2(4e||M||/eps) * 5.1 (n+3)^3 / (sigma_9(M) inR(W(M))) with the
/// inner-polygon (conservative) inradius. +infinity when sigma_9 or the
/// inradius vanishes (in particular for n < 9).
double small_ball_bound(const CMatrix& m, double eps, int angles = 256);

/// |ad - bc|^2 - |Re(conj(a) d) - |b|^2/2 - |c|^2/2|^2.
double phi_2x2(const CMatrix& b);

struct PhiSearchOptions {
  int budget = 10000;  ///< evaluations of the 2x2 functional
  std::uint64_t seed = 0;
  int angles = 256;
};

struct PhiWitness {
  CMatrix u;               ///< (n+4) x 2, orthonormal columns
  double phi_value = 0.0;  ///< Phi(U* M' U), signed
  /// (sigma_9(M') inR(W(M')) / 4)^2 using the outer-polygon inradius, i.e.
  /// the larger of the two certified radii.
  double bound = 0.0;
  double bound_inner = 0.0;  ///< same with the inner-polygon inradius
  double construction_value = 0.0;  ///< best |Phi| along the explicit construction
  int evaluations = 0;
  bool attained = false;  ///< |phi_value| >= bound
};

/// Searches for U in the Stiefel manifold with |Phi(U* M' U)| large, starting
/// from the two-point construction (Chebyshev center, isosceles pair, frames
/// V1, V2) and refining locally. Throws PreconditionError when M' has fewer
/// than 9 rows or the numerical range has empty interior.
PhiWitness phi_witness(const CMatrix& mp, const PhiSearchOptions& options = {});

/// (4 pi + 16 log(12^{1/4} ||M'|| / eps)) / |phi|^{1/2}; +infinity for phi = 0.
double l1_factor_bound(const CMatrix& mp, double eps, double phi);
/// Same formula from a precomputed norm.
double l1_factor_bound_from_norm(double norm, double eps, double phi);

/// Unit vector x in C^2 with x* B x = z for a 2x2 B and z in W(B), via the
/// Bloch-sphere parametrization. Throws PreconditionError if z is outside
/// W(B) by more than `slack`.
CVector realize_2x2(const CMatrix& b, Complex z, double slack = 1e-9);

struct ConeCheck {
  std::array<double, 3> u{};  ///< maximizer of |f| on the segment
  double t = 0.0;             ///< its parameter in [0, 1]
  double abs_f = 0.0;
  double threshold = 0.0;     ///< d^2 / 8
  bool holds = false;
};

/// Exact maximization of |x^2 + y^2 - z^2| along the segment p1 -> p2.
/// Throws PreconditionError unless the (x, y) shadows form a non-obtuse
/// isosceles triangle with apex 0 and base d.
ConeCheck cone_segment_check(const std::array<double, 3>& p1, const std::array<double, 3>& p2,
                             double d);

struct AppendixIntegral {
  double value = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// int_0^pi dtheta / max(eps^2, |b + a cos(2 theta - theta0)|) by adaptive
/// Gauss-Kronrod split at the kinks, against the closed-form bound.
/// holds allows 1e-8 absolute quadrature slack. Requires a, eps > 0.
AppendixIntegral appendix_integral(double a, double b, double eps, double theta0);

}  // namespace psc
