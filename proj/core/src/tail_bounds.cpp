#include "psc/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "psc/compressions.hpp"
#include "psc/parallel.hpp"
#include "psc/rand_frames.hpp"
#include "psc/stats.hpp"

namespace psc {

namespace {

void require_square(const CMatrix& a, const char* op) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError(std::string(op) + " needs a non-empty square matrix");
}

void require_ell(const CMatrix& a, int ell, const char* op) {
  if (ell < 1 || ell > a.rows())
    throw DimensionError(std::string(op) + ": ell must lie in [1, n]");
}

DominanceReport finish(std::size_t events, std::size_t samples, double bound) {
  DominanceReport r;
  r.events = events;
  r.samples = samples;
  r.p_hat = static_cast<double>(events) / samples;
  r.ci_upper = clopper_pearson_upper(events, samples);
  r.bound = bound;
  r.holds = r.ci_upper <= bound;
  return r;
}

// Schur complement against a fresh Haar frame, redrawing singular pivots.
CMatrix random_schur(const CMatrix& a, Index width, RngStream& rng, std::size_t& redraws) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Frame q = sample_haar_frame(a.rows(), width, rng);
    try {
      return schur_complement(a, q);
    } catch (const SingularPivotError&) {
      ++redraws;
    }
  }
  throw SingularPivotError("random Schur complement: every redraw had a singular pivot");
}

}  // namespace

BoundConstants BoundConstants::traced(Index n, int ell) {
  BoundConstants c;
  const double l = ell, nn = static_cast<double>(n);
  c.c1 = 24.0 * l * l * l * (nn - 1.0);
  c.c2 = 12.0 * std::pow(l, 4) * 10.0 * 5.1 * std::pow(nn + 3.0, 3) *
         std::pow(70.0 * (l + 3.0) * nn, 2.5);
  c.c3 = 4.0 * std::numbers::e * 24.0 * std::pow(l - 1.0, 3) * (nn - 1.0);
  c.c2_c3_traced = true;
  return c;
}

double first_order_bound(const CMatrix& a, int ell, double eps) {
  require_square(a, "first_order_bound");
  require_ell(a, ell, "first_order_bound");
  if (!(eps >= 0.0)) throw PreconditionError("first_order_bound needs eps >= 0");
  if (eps == 0.0) return 0.0;
  const double s = singular_value(a, ell);
  if (!(s > 0.0)) return 1.0;
  const double c1 = 24.0 * std::pow(ell, 3) * static_cast<double>(a.rows() - 1);
  return std::clamp(c1 * eps / s, 0.0, 1.0);
}

double second_order_bound(const CMatrix& a, int ell, double eps, const BoundConstants& consts,
                          const ConvexRegion& region) {
  require_square(a, "second_order_bound");
  const Index n = a.rows();
  if (ell < 1 || ell > n - 8) throw DimensionError("second_order_bound needs 1 <= ell <= n - 8");
  const double norm = operator_norm(a);
  if (!(eps > 0.0) || !(eps < norm / 2.0))
    throw PreconditionError("second_order_bound needs 0 < eps < ||A||/2");
  const RVector s = singular_values(a);
  const double s8 = s(ell + 7), s3 = s(ell + 2);
  const double r = inner_radius(region).lo;
  if (!(s8 > 0.0) || !(r > 0.0)) return 1.0;
  double arg;
  if (ell == 1) {
    arg = 4.0 * std::numbers::e * norm / eps;
  } else {
    const double sl1 = s(ell - 2);
    arg = consts.c3 / eps * 2.0 * norm * norm / sl1;
  }
  const double lg = std::log(arg);
  const double value = eps * eps * lg * lg * norm * norm / (s8 * s3 * s3) * consts.c2 / r;
  return std::clamp(value, 0.0, 1.0);
}

TailCurve smin_tail_empirical(const CMatrix& a, int ell, Complex z,
                              const std::vector<double>& eps_grid, std::size_t samples,
                              const RngStream& rng) {
  require_square(a, "smin_tail_empirical");
  require_ell(a, ell, "smin_tail_empirical");
  if (samples < 100) throw std::invalid_argument("smin_tail_empirical needs at least 100 samples");
  const CMatrix shifted = shift(a, z);
  TailCurve curve;
  curve.eps_grid = eps_grid;
  curve.n_samples = samples;
  curve.seed = rng.seed();
  curve.smin.resize(samples);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const Frame q = sample_haar_frame(a.rows(), ell, local);
    curve.smin[i] = smallest_singular_value(compress(shifted, q));
  });
  std::sort(curve.smin.begin(), curve.smin.end());

  const bool second_ok = ell <= a.rows() - 8;
  const ConvexRegion region = numerical_range(shifted, 256);
  const BoundConstants consts = BoundConstants::traced(a.rows(), ell);
  const double norm = operator_norm(shifted);
  for (double eps : eps_grid) {
    const auto hits = static_cast<std::size_t>(
        std::upper_bound(curve.smin.begin(), curve.smin.end(), eps) - curve.smin.begin());
    curve.p_hat.push_back(static_cast<double>(hits) / samples);
    curve.ci_upper.push_back(clopper_pearson_upper(hits, samples));
    curve.first_order.push_back(first_order_bound(shifted, ell, eps));
    if (second_ok && eps > 0.0 && eps < norm / 2.0)
      curve.second_order.push_back(second_order_bound(shifted, ell, eps, consts, region));
    else
      curve.second_order.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return curve;
}

ReductionReport reduction_check(const CMatrix& a, int ell, double eps, std::size_t samples,
                                const RngStream& rng) {
  require_square(a, "reduction_check");
  require_ell(a, ell, "reduction_check");
  const Index n = a.rows();
  std::vector<char> left(samples), right(samples);
  std::vector<std::size_t> redraws(samples, 0);
  const RngStream left_rng = rng.substream(0), right_rng = rng.substream(1);
  parallel_for(samples, [&](std::size_t i) {
    RngStream l = left_rng.substream(i);
    left[i] = smallest_singular_value(compress(a, sample_haar_frame(n, ell, l))) <= eps;
    RngStream r = right_rng.substream(i);
    const CMatrix m = random_schur(a, ell - 1, r, redraws[i]);
    const CVector q = sample_unit_vector(n, r);
    right[i] = std::abs(q.dot(m * q)) <= 2.0 * ell * eps;
  });
  ReductionReport out;
  out.samples = samples;
  std::size_t lh = 0, rh = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    lh += left[i];
    rh += right[i];
    out.resampled += redraws[i];
  }
  const double nn = static_cast<double>(samples);
  const double factor = 3.0 * ell * ell;
  out.left_p = lh / nn;
  out.right_p = rh / nn;
  out.right = factor * out.right_p;
  const double se_l = std::sqrt(out.left_p * (1.0 - out.left_p) / nn);
  const double se_r = factor * std::sqrt(out.right_p * (1.0 - out.right_p) / nn);
  out.slack = 3.0 * std::hypot(se_l, se_r);
  out.holds = out.left_p <= out.right + out.slack;
  return out;
}

double xlogx_bound(double x) {
  if (!(x > 0.0)) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * (1.0 + std::log(1.0 / x));
}

DominanceReport compression_area_check(const CMatrix& b, int k, double theta,
                                       std::size_t samples, const RngStream& rng) {
  require_square(b, "compression_area_check");
  const Index m = b.rows();
  if (k < 1 || 2 * k > m) throw DimensionError("compression_area_check needs 1 <= 2k <= m");
  if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("theta must lie in (0, 1)");
  const ConvexRegion ref = bowtie_zero(numerical_range(b, 256));
  const double bound = xlogx_bound(std::pow(theta, k));
  const double scale = std::max(ref.diameter_hi(), 1e-300);
  if (ref.area_hi() <= 1e-12 * scale * scale) {
    DominanceReport r;
    r.samples = samples;
    r.bound = bound;
    r.degenerate = true;
    r.holds = true;
    return r;
  }
  const double threshold = theta * ref.area_hi() / (4.0 * std::numbers::pi * double(m) * m);
  std::vector<char> hit(samples);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const Frame t = sample_haar_frame(m, 2 * k, local);
    const ConvexRegion w = bowtie_zero(numerical_range(compress(b, t), 128));
    hit[i] = w.area_lo() <= threshold;
  });
  std::size_t events = 0;
  for (char h : hit) events += h;
  return finish(events, samples, bound);
}

DominanceReport schur_inner_radius_check(const CMatrix& a, int ell, int ell_prime, double theta,
                                         std::size_t samples, const RngStream& rng) {
  require_square(a, "schur_inner_radius_check");
  const Index n = a.rows();
  require_ell(a, ell, "schur_inner_radius_check");
  if (ell_prime <= ell || ell_prime > n)
    throw PreconditionError("schur_inner_radius_check needs ell < ell' <= n");
  if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("theta must lie in (0, 1)");
  const InnerRadius ref = inner_radius(bowtie_zero(numerical_range(a, 256)));
  if (!(ref.lo > 0.0))
    throw PreconditionError("schur_inner_radius_check needs inR(W(A) (+) 0) > 0");
  const RVector s = singular_values(a);
  const double ratio = s(ell_prime - 1) / s(0);
  const double threshold = theta / std::pow(70.0 * ell_prime * double(n), 2.5) * ratio * ratio * ref.hi;
  std::vector<char> fail(samples);
  std::vector<std::size_t> redraws(samples, 0);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const CMatrix m = random_schur(a, ell - 1, local, redraws[i]);
    fail[i] = inner_radius(numerical_range(m, 128)).lo < threshold;
  });
  std::size_t events = 0, resampled = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    events += fail[i];
    resampled += redraws[i];
  }
  DominanceReport r = finish(events, samples, xlogx_bound(std::pow(theta, 0.5 * (ell_prime - ell))));
  r.resampled = resampled;
  return r;
}

CornerReport corner_smin_check(Index n, Index r, double theta, std::size_t samples,
                               const RngStream& rng) {
  if (r < 1 || r > n) throw DimensionError("corner_smin_check needs 1 <= r <= n");
  if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("theta must lie in (0, 1)");
  const double root = std::sqrt(double(r) * double(n - r));
  std::vector<double> smin(samples);
  parallel_for(samples, [&](std::size_t i) {
    RngStream local = rng.substream(i);
    const Frame u = sample_haar_frame(n, r, local);
    smin[i] = smallest_singular_value(u.matrix().topRows(r));
  });
  CornerReport out;
  const double bound = theta * theta;
  if (r == n) {
    out.usage.samples = samples;
    out.usage.bound = bound;
    out.usage.degenerate = true;
    out.usage.holds = true;
  } else {
    std::size_t events = 0;
    for (double v : smin) events += v < theta / root;
    out.usage = finish(events, samples, bound);
  }
  std::size_t literal = 0;
  for (double v : smin) literal += root == 0.0 ? 1 : (v >= root / theta);
  out.literal_p = static_cast<double>(literal) / samples;
  out.literal_holds = clopper_pearson_upper(literal, samples) >= 1.0 - bound;
  return out;
}

}  // namespace psc
