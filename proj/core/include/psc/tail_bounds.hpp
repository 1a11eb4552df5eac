#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psc/matrix.hpp"
#include "psc/numrange.hpp"
#include "psc/rng.hpp"

namespace psc {

/// Constants of the first- and second-order tail bounds.
///
/// c1 = 24 l^3 (n-1) exactly. The defaults for c2 and c3 follow the chain of
/// inequalities behind the second-order bound:
///   c2 = 12 l^4 * 10 * 5.1 (n+3)^3 * (70 (l+3) n)^2.5
///   c3 = 4e * 24 (l-1)^3 (n-1)
/// where 12 l^4 = 3 l^2 (net size) * (2 l)^2 (radius inflation of the
/// reduction). Both are plain fields so callers can substitute their own.
struct BoundConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool c2_c3_traced = true;

  static BoundConstants traced(Index n, int ell);
};

/// 24 l^3 (n-1) eps / sigma_l(A) clamped to [0, 1]; 1 when sigma_l(A) = 0.
double first_order_bound(const CMatrix& a, int ell, double eps);

/// eps^2 log^2((c3/eps) 2||A||^2 / sigma_{l-1}(A)) * ||A||^2 /
/// (sigma_{l+8}(A) sigma_{l+3}(A)^2) * c2 / inR(W(A)), clamped to [0, 1].
/// For l = 1 the log argument is 4e||A||/eps. Uses the inner-polygon
/// inradius of `region` (conservative). Throws DimensionError for
/// l > n - 8 and PreconditionError unless 0 < eps < ||A||/2.
double second_order_bound(const CMatrix& a, int ell, double eps, const BoundConstants& consts,
                          const ConvexRegion& region);

/// Empirical CDF of sigma_min(Q*(z - A)Q) over N Haar frames.
struct TailCurve {
  std::vector<double> eps_grid;
  std::vector<double> p_hat;
  std::vector<double> ci_upper;     ///< one-sided 99% Clopper-Pearson
  std::vector<double> first_order;  ///< bound at each eps
  /// Second-order bound, or NaN where its preconditions fail.
  std::vector<double> second_order;
  std::vector<double> smin;  ///< sorted draws
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

TailCurve smin_tail_empirical(const CMatrix& a, int ell, Complex z,
                              const std::vector<double>& eps_grid, std::size_t samples,
                              const RngStream& rng);

/// Generic Monte Carlo dominance verdict.
struct DominanceReport {
  std::size_t events = 0;
  std::size_t samples = 0;
  double p_hat = 0.0;
  double ci_upper = 0.0;
  double bound = 0.0;
  bool holds = false;
  /// Draws rejected (singular pivots) and redrawn.
  std::size_t resampled = 0;
  /// The inequality is trivially true for a degenerate input.
  bool degenerate = false;
};

struct ReductionReport {
  std::size_t samples = 0;
  double left_p = 0.0;   ///< Pr(sigma_min(Q*AQ) <= eps)
  double right_p = 0.0;  ///< Pr(|q*(A/Q')q| <= 2 l eps), nested over Q' then q
  double right = 0.0;    ///< 3 l^2 right_p
  double slack = 0.0;    ///< 3 pooled standard errors
  std::size_t resampled = 0;
  bool holds = false;
};

/// Both sides of the reduction inequality from independent draws; the
/// verdict is left_p <= right + slack.
ReductionReport reduction_check(const CMatrix& a, int ell, double eps, std::size_t samples,
                                const RngStream& rng);

/// x log(e/x) = x (1 + log(1/x)), capped at 1 for x >= 1.
double xlogx_bound(double x);

/// Pr(area(W(T*BT) (+) 0) <= theta area(W(B) (+) 0) / (4 pi m^2)) for
/// T ~ Haar(m, 2k), against x log(e/x) at x = theta^k. Areas are compared
/// conservatively: sample inner area against reference outer area. A
/// reference with zero area is reported as degenerate (the inequality needs a
/// region with interior). Requires 2k <= m.
DominanceReport compression_area_check(const CMatrix& b, int k, double theta,
                                       std::size_t samples, const RngStream& rng);

/// Failure rate of inR(W(A/Q')) >= theta / (70 l' n)^2.5 * sigma_{l'}(A)^2 /
/// sigma_1(A)^2 * inR(W(A) (+) 0), Q' ~ Haar(n, l-1), against
/// x log(e/x) at x = theta^((l'-l)/2). Throws PreconditionError if l' <= l,
/// l' > n, or inR(W(A) (+) 0) = 0.
DominanceReport schur_inner_radius_check(const CMatrix& a, int ell, int ell_prime, double theta,
                                         std::size_t samples, const RngStream& rng);

struct CornerReport {
  DominanceReport usage;  ///< Pr(sigma_r(X) < theta / sqrt(r(n-r))) <= theta^2
  /// Literal reading Pr(sigma_r(X) >= sqrt(r(n-r)) / theta) >= 1 - theta^2:
  /// empirical probability and whether it is met.
  double literal_p = 0.0;
  bool literal_holds = false;
};

/// X = top r x r block of U ~ Haar(n, r). For r = n the threshold is
/// infinite and the verdict is reported as degenerate.
CornerReport corner_smin_check(Index n, Index r, double theta, std::size_t samples,
                               const RngStream& rng);

}  // namespace psc
