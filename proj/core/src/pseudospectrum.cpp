#include "psc/pseudospectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <Eigen/SVD>

#include "psc/compressions.hpp"
#include "psc/parallel.hpp"
#include "psc/rand_frames.hpp"

namespace psc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_square(const CMatrix& a, const char* op) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError(std::string(op) + " needs a non-empty square matrix");
}

// sigma_k(zI - M), 1-based k, with the scalar case done directly.
class ShiftedSingularValue {
 public:
  ShiftedSingularValue(const CMatrix& m, Index k) : m_(m), k_(k), work_(m) {}

  double operator()(Complex z) {
    if (m_.rows() == 1) return std::abs(z - m_(0, 0));
    work_ = -m_;
    work_.diagonal().array() += z;
    svd_.compute(work_);
    return svd_.singularValues()(k_ - 1);
  }

 private:
  const CMatrix& m_;
  Index k_;
  CMatrix work_;
  // Divide and conquer: same absolute accuracy as Jacobi (all the Lipschitz
  // certificates need), several times faster from n ~ 20; Eigen switches to
  // Jacobi internally for small blocks.
  Eigen::BDCSVD<CMatrix> svd_;
};

struct Cell {
  double x, y;  // center
};

std::array<double, 4> omega_box(const CMatrix& m, double eps) {
  return minkowski_eps(numerical_range(m, 64), eps).bounding_box();
}

}  // namespace

bool in_pseudospectrum(const CMatrix& m, Complex z, double eps) {
  require_square(m, "in_pseudospectrum");
  if (!(eps >= 0.0)) throw PreconditionError("in_pseudospectrum needs eps >= 0");
  return ShiftedSingularValue(m, m.rows())(z) <= eps;
}

AreaInterval pseudospectrum_area(const CMatrix& m, double eps, const AreaOptions& options) {
  require_square(m, "pseudospectrum_area");
  require_finite(m, "pseudospectrum_area");
  if (!(eps > 0.0)) throw PreconditionError("pseudospectrum_area needs eps > 0");
  if (options.resolution < 64) throw PreconditionError("pseudospectrum_area needs resolution >= 64");
  const std::array<double, 4> box = options.box ? *options.box : omega_box(m, eps);

  const double width = box[1] - box[0], height = box[3] - box[2];
  double h = std::max(width, height) / options.resolution;
  const auto nx = static_cast<long>(std::ceil(width / h)), ny = static_cast<long>(std::ceil(height / h));
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(nx * ny));
  for (long j = 0; j < ny; ++j)
    for (long i = 0; i < nx; ++i) cells.push_back({box[0] + (i + 0.5) * h, box[2] + (j + 0.5) * h});

  ShiftedSingularValue smin(m, m.rows());
  const double target = options.rel_width * std::numbers::pi * eps * eps;
  AreaInterval out;
  std::vector<Cell> boundary;
  for (int level = 0;; ++level) {
    const double d = h * std::numbers::sqrt2 / 2.0;
    boundary.clear();
    for (const Cell& c : cells) {
      const double s = smin(Complex(c.x, c.y));
      ++out.evaluations;
      if (s + d <= eps)
        out.lo += h * h;
      else if (s - d <= eps)
        boundary.push_back(c);
    }
    const double pending = static_cast<double>(boundary.size()) * h * h;
    out.levels = level;
    out.finest_cell = h;
    if (pending <= target || level >= options.max_levels) {
      out.hi = out.lo + pending;
      break;
    }
    const double q = h / 4.0;
    cells.clear();
    for (const Cell& c : boundary) {
      cells.push_back({c.x - q, c.y - q});
      cells.push_back({c.x + q, c.y - q});
      cells.push_back({c.x - q, c.y + q});
      cells.push_back({c.x + q, c.y + q});
    }
    h /= 2.0;
  }
  return out;
}

ShiftMinimum shifted_min(const CMatrix& a, Index k, const ConvexRegion& region, double tol,
                         std::size_t max_evaluations) {
  require_square(a, "shifted_min");
  if (k < 1 || k > a.rows()) throw DimensionError("shifted_min needs 1 <= k <= n");
  if (!(tol > 0.0)) throw PreconditionError("shifted_min needs tol > 0");
  ShiftedSingularValue sk(a, k);
  ShiftMinimum best;
  best.k = k;
  best.s_k = kInf;
  auto visit = [&](Complex z) {
    const double v = sk(z);
    ++best.evaluations;
    if (v < best.s_k) {
      best.s_k = v;
      best.z_k = z;
    }
    return v;
  };
  for (Complex t : region.touch) visit(t);
  auto box = region.bounding_box();
  visit(Complex((box[0] + box[1]) / 2.0, (box[2] + box[3]) / 2.0));
  const double margin = 2.0 * best.s_k;
  const double cx = (box[0] + box[1]) / 2.0, cy = (box[2] + box[3]) / 2.0;
  const double side = std::max(box[1] - box[0], box[3] - box[2]) + 2.0 * margin;

  struct Node {
    double lower, x, y, side;
    bool operator>(const Node& o) const { return lower > o.lower; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> queue;
  auto push = [&](double x, double y, double s) {
    const double v = visit(Complex(x, y));
    queue.push({v - s * std::numbers::sqrt2 / 2.0, x, y, s});
  };
  push(cx, cy, side);
  while (!queue.empty()) {
    const Node node = queue.top();
    // sigma_k >= 0, so lower bounds below zero carry no information.
    if (std::max(0.0, node.lower) >= best.s_k - tol || best.evaluations >= max_evaluations) break;
    queue.pop();
    const double q = node.side / 4.0, s = node.side / 2.0;
    push(node.x - q, node.y - q, s);
    push(node.x + q, node.y - q, s);
    push(node.x - q, node.y + q, s);
    push(node.x + q, node.y + q, s);
  }
  const double lower = queue.empty() ? best.s_k : std::max(0.0, queue.top().lower);
  best.certificate_gap = std::max(0.0, best.s_k - lower);
  return best;
}

GrowthCheck lemma57_check(const CMatrix& a, Index k, Complex z, const ShiftMinimum& minimum) {
  require_square(a, "lemma57_check");
  if (k < 1 || 2 * k > a.rows() + 1)
    throw PreconditionError("lemma57_check needs 1 <= k <= (n + 1)/2");
  if (minimum.k != k) throw PreconditionError("lemma57_check: minimum was computed for another k");
  GrowthCheck out;
  out.lhs = ShiftedSingularValue(a, k)(z);
  const double dist = std::abs(z - minimum.z_k) / 2.0;
  out.rhs = std::max(minimum.s_k, dist);
  // s_k is an upper estimate of the true minimum by at most the gap, and
  // |z - z_k| <= sigma_k(z - A) + sigma_k(z_k - A) holds for any point z_k.
  const double round = 1e-12 * (1.0 + out.lhs + out.rhs);
  const double gap = minimum.certificate_gap;
  out.holds = out.lhs + round >= std::max(minimum.s_k - gap, dist - gap / 2.0);
  return out;
}

ExpectedArea expected_area_mc(const CMatrix& a, int ell, double eps, std::size_t samples,
                              const AreaOptions& options, const RngStream& rng) {
  require_square(a, "expected_area_mc");
  if (ell < 1 || ell > a.rows()) throw DimensionError("expected_area_mc needs 1 <= ell <= n");
  if (samples < 20) throw PreconditionError("expected_area_mc needs at least 20 samples");
  ExpectedArea out;
  out.box = options.box ? *options.box
                        : minkowski_eps(numerical_range(a, 256), eps).bounding_box();
  AreaOptions per = options;
  per.box = out.box;
  out.lo.resize(samples);
  out.hi.resize(samples);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const Frame q = sample_haar_frame(a.rows(), ell, local);
    const AreaInterval area = pseudospectrum_area(compress(a, q), eps, per);
    out.lo[i] = area.lo;
    out.hi[i] = area.hi;
  });
  const MeanEstimate lo = estimate_mean(out.lo), hi = estimate_mean(out.hi);
  out.mean_lo = lo.mean;
  out.mean_hi = hi.mean;
  out.ci = std::max(lo.half_width, hi.half_width);
  return out;
}

MeanEstimate expected_area_by_probability(const CMatrix& a, int ell, double eps,
                                          std::size_t frames, std::size_t points,
                                          const RngStream& rng) {
  require_square(a, "expected_area_by_probability");
  if (ell < 1 || ell > a.rows()) throw DimensionError("expected_area_by_probability needs 1 <= ell <= n");
  if (frames < 2 || points < 1) throw PreconditionError("expected_area_by_probability needs frames >= 2");
  const auto box = minkowski_eps(numerical_range(a, 256), eps).bounding_box();
  const double box_area = (box[1] - box[0]) * (box[3] - box[2]);
  std::vector<double> cluster(frames);
  parallel_for(frames, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const Frame q = sample_haar_frame(a.rows(), ell, local);
    const CMatrix m = compress(a, q);
    ShiftedSingularValue smin(m, m.rows());
    std::size_t hits = 0;
    for (std::size_t j = 0; j < points; ++j) {
      const double x = box[0] + (box[1] - box[0]) * local.uniform();
      const double y = box[2] + (box[3] - box[2]) * local.uniform();
      hits += smin(Complex(x, y)) <= eps;
    }
    cluster[i] = box_area * static_cast<double>(hits) / points;
  });
  return estimate_mean(cluster);
}

AreaGeometry area_geometry(const CMatrix& a, int ell, double eps) {
  require_square(a, "area_geometry");
  const Index n = a.rows();
  if (ell < 1 || ell > n) throw DimensionError("area_geometry needs 1 <= ell <= n");
  const ConvexRegion w = numerical_range(a, 256);
  const double tol = 1e-4 * std::max(1.0, operator_norm(a));
  AreaGeometry shifts;
  shifts.s_l = shifted_min(a, ell, w, tol).s_k;
  // Only the five bound items and the regime table read s_{l+8}; both require
  // l <= n/2 - 7.5, and the search can be slow (minimizers on a curve).
  shifts.s_l8 = ell <= n / 2.0 - 7.5 ? shifted_min(a, ell + 8, w, tol).s_k : 0.0;
  return area_geometry(a, eps, shifts);
}

AreaGeometry area_geometry(const CMatrix& a, double eps, const AreaGeometry& shifts) {
  require_square(a, "area_geometry");
  const ConvexRegion omega = minkowski_eps(numerical_range(a, 256), eps);
  AreaGeometry g = shifts;
  g.R = omega.diameter_hi();
  g.r = inner_radius(omega).lo;
  return g;
}

double TheoremBounds::best() const {
  double b = kInf;
  for (int i = 0; i < 5; ++i)
    if (applicable[i]) b = std::min(b, items[i]);
  if (lemma54_applicable) b = std::min(b, lemma54);
  return b;
}

TheoremBounds theorem_bounds(const CMatrix& a, int ell, double eps, const BoundConstants& consts,
                             const AreaGeometry& g) {
  require_square(a, "theorem_bounds");
  const Index n = a.rows();
  if (ell < 1 || ell > n) throw DimensionError("theorem_bounds needs 1 <= ell <= n");
  if (!(eps > 0.0)) throw PreconditionError("theorem_bounds needs eps > 0");
  TheoremBounds out;
  out.geometry = g;
  out.consts = consts;
  out.ell = ell;
  out.eps = eps;
  const double pi = std::numbers::pi, e = std::numbers::e;
  const double c1 = consts.c1, c2 = consts.c2, c3 = consts.c3;
  const double R = g.R, r = g.r, s8 = g.s_l8;

  if (s8 > 0.0) {
    const double lg = std::log(c3 * 2.0 * e * R * R / (eps * s8));
    out.items[0] = 4.0 * pi * c2 * lg * lg * R * R / (s8 * s8) * eps * eps;
    out.items[1] = r > 0.0 ? 4.0 * pi * c2 * lg * lg * R * R / (s8 * r) * eps * eps : kInf;
  } else {
    out.items[0] = out.items[1] = kInf;
  }
  if (r > 0.0) {
    const double lg = std::log(c3 * 2.0 * e * std::pow(R, 4.0 / 3.0) * std::cbrt(r) /
                               (std::cbrt(c2) * std::pow(eps, 5.0 / 3.0)));
    out.items[2] = 4.0 * pi * std::cbrt(c2) * lg * lg * std::pow(R * r, 2.0 / 3.0) *
                   std::pow(eps, 2.0 / 3.0);
    out.items[3] = 4.0 * pi * std::pow(c2, 2.0 / 3.0) * lg * lg * std::pow(R, 4.0 / 3.0) /
                   std::pow(r, 2.0 / 3.0) * std::pow(eps, 4.0 / 3.0);
  } else {
    out.items[2] = out.items[3] = kInf;
  }
  out.items[4] = 25.0 * std::pow(c2 * c1, 0.4) * std::log(n * R / eps) * std::pow(R, 0.8) *
                 std::pow(eps, 1.2);
  for (double& v : out.items)
    if (std::isnan(v)) v = kInf;

  const double floor = std::max({c1 * eps, r, g.s_l});
  out.lemma54 = r > 0.0 ? 2.0 * pi * c1 * std::log(e * R / floor) * r * eps : 0.0;
  out.lemma54_applicable = r > 0.0 && R >= floor;

  const bool items_ok = ell >= 2 && ell <= n / 2.0 - 7.5;
  out.applicable.fill(items_ok);
  return out;
}

std::optional<Regime> regime_exponent(const RegimeFlags& flags, const AreaGeometry& g, Index n,
                                      int ell) {
  if (ell < 1 || ell > n / 2.0 - 8.0)
    throw DimensionError("regime_exponent needs ell <= n/2 - 8");
  if (flags.bounded && !std::isfinite(g.R))
    throw PreconditionError("flag (a) needs a finite diameter");
  if (flags.fat && !(g.r > 0.0)) throw PreconditionError("flag (b) needs r > 0");
  if (flags.well_separated && !(g.s_l8 > 0.0))
    throw PreconditionError("flag (c) needs s_{l+8} > 0");
  if (!flags.bounded) return std::nullopt;
  if (flags.well_separated) return Regime{2.0, 1};
  if (flags.fat) return Regime{4.0 / 3.0, 4};
  return Regime{6.0 / 5.0, 5};
}

}  // namespace psc
