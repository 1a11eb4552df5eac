#pragma once

#include <array>
#include <optional>
#include <vector>

#include "psc/matrix.hpp"
#include "psc/numrange.hpp"
#include "psc/rng.hpp"
#include "psc/stats.hpp"
#include "psc/tail_bounds.hpp"

namespace psc {

/// sigma_min(zI - M) <= eps.
bool in_pseudospectrum(const CMatrix& m, Complex z, double eps);

struct AreaOptions {
  int resolution = 64;  ///< base cells along the longer side of the box
  /// Refine boundary cells until their total area is at most
  /// rel_width * pi eps^2, or max_levels subdivisions have been made.
  double rel_width = 0.02;
  int max_levels = 14;
  /// Box {xmin, xmax, ymin, ymax}; defaults to the box of W(M) + B(0, eps).
  std::optional<std::array<double, 4>> box;
};

/// Certified area interval of Lambda_eps(M). Each square cell is classified
/// with the 1-Lipschitz bound on z -> sigma_min(z - M): in when
/// s + d <= eps, out when s - d > eps (d = half-diagonal), otherwise it is a
/// boundary cell and is split in four at the next level.
struct AreaInterval {
  double lo = 0.0;
  double hi = 0.0;
  int levels = 0;
  double finest_cell = 0.0;
  std::size_t evaluations = 0;
};

AreaInterval pseudospectrum_area(const CMatrix& m, double eps, const AreaOptions& options = {});

struct ShiftMinimum {
  Index k = 0;
  Complex z_k;
  double s_k = 0.0;
  /// s_k minus the smallest certified lower bound over the search box.
  double certificate_gap = 0.0;
  std::size_t evaluations = 0;
};

/// Global minimum of sigma_k(z - A) over the box of `region` widened by twice
/// the best value found on the region's touch points. Branch and bound on
/// squares with the 1-Lipschitz lower bound; stops once the gap is at most
/// tol or after max_evaluations.
ShiftMinimum shifted_min(const CMatrix& a, Index k, const ConvexRegion& region, double tol,
                         std::size_t max_evaluations = 200000);

struct GrowthCheck {
  double lhs = 0.0;  ///< sigma_k(z - A)
  double rhs = 0.0;  ///< max(s_k, |z - z_k| / 2)
  bool holds = false;
};

/// sigma_k(z - A) >= max(s_k, |z - z_k|/2) up to the certificate gap.
/// Requires k <= (n + 1)/2.
GrowthCheck lemma57_check(const CMatrix& a, Index k, Complex z, const ShiftMinimum& minimum);

struct ExpectedArea {
  double mean_lo = 0.0;
  double mean_hi = 0.0;
  double ci = 0.0;  ///< 99% normal half-width, the larger of the lo and hi ones
  std::vector<double> lo, hi;
  std::array<double, 4> box{};
};

/// E area Lambda_eps(Q*AQ) over `samples` Haar frames (sample i uses
/// rng.substream(i)). Every sample uses the box of W(A) + B(0, eps).
ExpectedArea expected_area_mc(const CMatrix& a, int ell, double eps, std::size_t samples,
                              const AreaOptions& options, const RngStream& rng);

/// The same expectation written as the integral over the box of
/// Pr(sigma_min(Q*(z - A)Q) <= eps), estimated with `points` uniform z per
/// frame; the CI treats frames as clusters.
MeanEstimate expected_area_by_probability(const CMatrix& a, int ell, double eps,
                                          std::size_t frames, std::size_t points,
                                          const RngStream& rng);

struct AreaGeometry {
  double R = 0.0;    ///< diameter of W(A) + B(0, eps)
  double r = 0.0;    ///< inner radius of W(A) + B(0, eps)
  double s_l = 0.0;  ///< min over z of sigma_l(z - A)
  double s_l8 = 0.0; ///< min over z of sigma_{l+8}(z - A); 0 (not computed) when l > n/2 - 7.5
};

/// Geometry inputs for theorem_bounds computed from numerical ranges and
/// shifted_min.
AreaGeometry area_geometry(const CMatrix& a, int ell, double eps);
/// Same, reusing s_l and s_l8 (which do not depend on eps) from an earlier
/// result for the same A and l.
AreaGeometry area_geometry(const CMatrix& a, double eps, const AreaGeometry& shifts);

struct TheoremBounds {
  std::array<double, 5> items{};
  std::array<bool, 5> applicable{};
  double lemma54 = 0.0;
  bool lemma54_applicable = false;
  AreaGeometry geometry;
  BoundConstants consts;
  int ell = 0;
  double eps = 0.0;

  /// Smallest applicable bound; +inf if none applies.
  double best() const;
};

/// The five expected-area bounds and the r-eps bound, evaluated verbatim.
/// Items are applicable when l <= n/2 - 7.5; the r-eps bound when
/// R >= max(c1 eps, r, s_l). Degenerate r or s_{l+8} makes the affected
/// items +inf.
TheoremBounds theorem_bounds(const CMatrix& a, int ell, double eps, const BoundConstants& consts,
                             const AreaGeometry& geometry);

struct RegimeFlags {
  bool bounded = false;       ///< (a) R finite
  bool fat = false;           ///< (b) r > 0
  bool well_separated = false;///< (c) s_{l+8} > 0
};

struct Regime {
  double beta = 0.0;
  int item = 0;
};

/// Exponent of eps in the best bound under the given assumptions, with the
/// item that realizes it. Empty when no assumption is made. Throws
/// PreconditionError when a flag contradicts `geometry` and DimensionError
/// when l > n/2 - 8.
std::optional<Regime> regime_exponent(const RegimeFlags& flags, const AreaGeometry& geometry,
                                      Index n, int ell);

}  // namespace psc
