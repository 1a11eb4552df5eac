#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "config.hpp"
#include "psc/bspline.hpp"
#include "psc/compressions.hpp"
#include "psc/numerical_measure.hpp"
#include "psc/numrange.hpp"
#include "psc/pseudospectrum.hpp"
#include "psc/rand_frames.hpp"
#include "psc/stats.hpp"
#include "psc/tail_bounds.hpp"

namespace psc::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

int draw_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double draw(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

CMatrix hermitian(RngStream& rng, Index n) {
  const CMatrix g = sample_ginibre(n, rng);
  return (g + g.adjoint()) / 2.0;
}

CMatrix ginibre(RngStream& rng, Index n) {
  return sample_ginibre(n, rng, 1.0 / std::sqrt(static_cast<double>(n)));
}

std::vector<double> eigen_list(const CMatrix& h) {
  const RVector e = hermitian_eigenvalues(h);
  return {e.data(), e.data() + e.size()};
}

CMatrix jordan(Index n) {
  CMatrix j = CMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

json dominance_json(const DominanceReport& r) {
  return {{"samples", r.samples}, {"p_hat", r.p_hat},     {"ci_upper", r.ci_upper},
          {"bound", r.bound},     {"holds", r.holds},     {"resampled", r.resampled},
          {"degenerate", r.degenerate}};
}

SuiteResult haar(RngStream rng) {
  double worst_defect = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = draw_int(rng, 2, 12), k = draw_int(rng, 1, n);
    worst_defect = std::max(worst_defect, sample_haar_frame(n, k, rng).orthonormality_defect());
  }
  // |q_1|^2 of a Haar unit vector in C^6 is Beta(1, 5).
  const int n = 6, samples = 20000;
  std::vector<double> x(samples);
  for (int i = 0; i < samples; ++i) {
    RngStream r = rng.substream(i);
    x[i] = std::norm(sample_haar_frame(n, 1, r).matrix()(0, 0));
  }
  const double ks = ks_distance(x, [&](double t) { return 1.0 - std::pow(1.0 - t, n - 1); });
  return {"haar", "", worst_defect <= 1e-12 && ks <= 0.02,
          {{"max_orthonormality_defect", worst_defect}, {"beta_ks", ks}, {"ks_samples", samples}}};
}

SuiteResult reduction(RngStream rng) {
  const CMatrix a = ginibre(rng, 12);
  const ReductionReport r = reduction_check(a, 3, 1e-2, 1000, rng.substream(1));
  return {"a7", "", r.holds,
          {{"ell", 3}, {"eps", 1e-2}, {"left_p", r.left_p}, {"right_p", r.right_p},
           {"right", r.right}, {"slack", r.slack}, {"samples", r.samples}}};
}

SuiteResult net(RngStream rng) {
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 300; ++t) {
    const int ell = draw_int(rng, 2, 8);
    const NetReport r = verify_net_inequality(sample_ginibre(ell, rng));
    failures += !r.holds;
    worst = std::max(worst, r.lhs / r.rhs);
  }
  return {"a17", "", failures == 0, {{"cases", 300}, {"failures", failures}, {"max_ratio", worst}}};
}

SuiteResult spline_integral(RngStream rng) {
  double worst = 0.0, range_violation = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = draw_int(rng, 2, 12);
    std::vector<double> knots(n);
    for (double& v : knots) v = draw(rng, -2, 2);
    std::sort(knots.begin(), knots.end());
    const SplineDensity s = bspline_build(knots);
    const double span = knots.back() - knots.front();
    worst = std::max(worst, std::abs(s.spline().integral() - span / (n - 1)) / std::max(1.0, span));
    for (int j = 0; j <= 100; ++j) {
      const double v = s(knots.front() + span * j / 100.0);
      range_violation = std::max({range_violation, -v, v - 1.0});
    }
  }
  return {"a22", "", worst <= 1e-10 && range_violation <= 1e-12,
          {{"cases", 100}, {"max_integral_error", worst}, {"max_range_violation", range_violation}}};
}

SuiteResult spline_law(RngStream rng) {
  json cases = json::array();
  bool pass = true;
  for (int t = 0; t < 5; ++t) {
    const int n = draw_int(rng, 2, 10);
    const CMatrix h = hermitian(rng, n);
    const SplineDensity s = hermitian_form_spline(eigen_list(h));
    const int samples = 20000;
    std::vector<double> x(samples);
    const RngStream draws = rng.substream(t);
    for (int i = 0; i < samples; ++i) {
      RngStream r = draws.substream(i);
      const CVector q = sample_unit_vector(n, r);
      x[i] = q.dot(h * q).real();
    }
    const double ks = ks_distance(x, [&](double v) { return s.cdf(v); });
    pass = pass && ks <= 0.02;
    cases.push_back({{"n", n}, {"ks", ks}, {"samples", samples}});
  }
  return {"a24", "", pass, {{"cases", cases}}};
}

SuiteResult first_order_tail(RngStream rng) {
  const std::vector<double> eps = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
  json cases = json::array();
  bool pass = true;
  const std::vector<std::pair<std::string, CMatrix>> inputs = {{"jordan:12", jordan(12)},
                                                               {"ginibre:12", ginibre(rng, 12)}};
  for (std::size_t c = 0; c < inputs.size(); ++c) {
    const TailCurve t = smin_tail_empirical(inputs[c].second, 2, 0.0, eps, 2000, rng.substream(c));
    bool holds = true;
    for (std::size_t i = 0; i < eps.size(); ++i) holds = holds && t.ci_upper[i] <= t.first_order[i];
    pass = pass && holds;
    cases.push_back({{"matrix", inputs[c].first}, {"ell", 2}, {"eps", eps}, {"ci_upper", t.ci_upper},
                     {"bound", t.first_order}, {"holds", holds}});
  }
  return {"a25", "", pass, {{"cases", cases}}};
}

SuiteResult concavity(RngStream rng) {
  int checked = 0, failures = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = draw_int(rng, 4, 10);
    std::vector<double> ev = eigen_list(hermitian(rng, n));
    std::sort(ev.begin(), ev.end());
    const double floor = concavity_floor(ev);
    if (!std::isfinite(floor)) continue;
    const PiecewisePolynomial rho2 = hermitian_form_spline(ev).density().derivative().derivative();
    const double lo = ev[1], hi = ev[n - 2];
    for (int j = 0; j <= 400; ++j) {
      const double x = lo + (hi - lo) * j / 400.0;
      failures += rho2(x) < floor - 1e-9 * std::abs(floor);
    }
    ++checked;
  }
  return {"a35", "", failures == 0, {{"matrices", checked}, {"failures", failures}}};
}

SuiteResult hilbert_bound(RngStream rng) {
  int failures = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 30; ++t) {
    const int n = draw_int(rng, 4, 10);
    const std::vector<double> ev = eigen_list(hermitian(rng, n));
    const WFunctionals w = w_functionals(ev);
    const double bound = (n - 1.0) * (n - 2.0) * (n - 3.0) / (w.w1 * w.w2) *
                         std::log(4.0 * std::numbers::e * w.w1 / w.w3) / kPi;
    const SplineDensity s = hermitian_form_spline(ev);
    const auto [mn, mx] = std::minmax_element(ev.begin(), ev.end());
    for (int j = 0; j <= 100; ++j) {
      const double v = hilbert_spline_derivative(s, *mn + (*mx - *mn) * j / 100.0);
      failures += v > bound * (1 + 1e-9);
      worst = std::max(worst, v / bound);
    }
  }
  return {"a36", "", failures == 0, {{"matrices", 30}, {"failures", failures}, {"max_ratio", worst}}};
}

SuiteResult density_small_ball(RngStream rng) {
  const CMatrix mp = regularize(ginibre(rng, 6), 0.05);
  const double sup = density_sup_bound(mp, 256);
  json rows = json::array();
  bool pass = std::isfinite(sup);
  for (double eps : {0.05, 0.02}) {
    const SmallBallEstimate e = small_ball_empirical(mp, eps, 0.0, 20000, rng.substream(1));
    const double lower = clopper_pearson_lower(e.hits, e.samples);
    const double bound = kPi * eps * eps * sup;
    pass = pass && lower <= bound;
    rows.push_back({{"eps", eps}, {"p_hat", e.p_hat}, {"ci_lower", lower}, {"bound", bound}});
  }
  return {"a41", "", pass, {{"density_sup_bound", sup}, {"rows", rows}}};
}

SuiteResult regularized_gap(RngStream rng) {
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10; ++t) {
    const double eps = draw(rng, 0.01, 0.3);
    const CMatrix mp = regularize(ginibre(rng, draw_int(rng, 4, 8)), eps);
    for (int j = 0; j < 256; ++j) {
      const double w3 = w_functionals(eigen_list(hermitian_part(mp, 2 * kPi * j / 256))).w3;
      failures += w3 < 2 * eps * (1 - 1e-9);
      worst = std::min(worst, w3 / (2 * eps));
    }
  }
  return {"a42", "", failures == 0, {{"matrices", 10}, {"failures", failures}, {"min_ratio", worst}}};
}

SuiteResult l1_factor(RngStream rng) {
  json rows = json::array();
  bool pass = true;
  for (int t = 0; t < 2; ++t) {
    const CMatrix mp = regularize(ginibre(rng, 6), 0.1);
    PhiSearchOptions opt;
    opt.budget = 2000;
    opt.seed = rng();
    const PhiWitness w = phi_witness(mp, opt);
    const double q = l1_factor_quadrature(mp, 512), b = l1_factor_bound(mp, 0.1, w.phi_value);
    // 1% allowance for the trapezoid rule on a kinked integrand.
    pass = pass && q <= b * 1.01;
    rows.push_back({{"quadrature", q}, {"bound", b}, {"phi", w.phi_value}});
  }
  return {"a44", "", pass, {{"rows", rows}}};
}

SuiteResult clipped_cosine(RngStream rng) {
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const double a = draw(rng, 0.01, 3), b = draw(rng, -3, 3);
    const double eps = std::pow(10.0, draw(rng, -4, 0));
    failures += !appendix_integral(a, b, eps, draw(rng, 0, 2 * kPi)).holds;
  }
  return {"a45", "", failures == 0, {{"cases", 100}, {"failures", failures}}};
}

SuiteResult cone(RngStream rng) {
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 2000; ++t) {
    const double r = draw(rng, 0.01, 5), half = draw(rng, 1e-3, kPi / 4);
    const double phi = draw(rng, 0, 2 * kPi), d = 2 * r * std::sin(half);
    const ConeCheck c = cone_segment_check(
        {r * std::cos(phi + half), r * std::sin(phi + half), draw(rng, -6, 6)},
        {r * std::cos(phi - half), r * std::sin(phi - half), draw(rng, -6, 6)}, d);
    failures += !c.holds;
    worst = std::min(worst, c.abs_f / c.threshold);
  }
  return {"a46", "", failures == 0, {{"cases", 2000}, {"failures", failures}, {"min_ratio", worst}}};
}

SuiteResult phi(RngStream rng) {
  json rows = json::array();
  bool pass = true;
  for (int t = 0; t < 2; ++t) {
    const CMatrix mp = regularize(ginibre(rng, 6), 0.05);
    PhiSearchOptions opt;
    opt.seed = rng();
    const PhiWitness w = phi_witness(mp, opt);
    pass = pass && w.attained;
    rows.push_back({{"phi", w.phi_value}, {"bound", w.bound}, {"evaluations", w.evaluations},
                    {"attained", w.attained}});
  }
  return {"a47", "", pass, {{"rows", rows}}};
}

SuiteResult compression_area(RngStream rng) {
  CMatrix b = CMatrix::Zero(3, 3);
  b(0, 1) = 2.0;
  b(2, 2) = Complex(1, 1);
  const DominanceReport r = compression_area_check(b, 1, 0.1, 2000, rng);
  return {"a49", "", r.holds, dominance_json(r)};
}

SuiteResult schur_inradius(RngStream rng) {
  CMatrix a = CMatrix::Zero(12, 12);
  for (int k = 0; k < 12; ++k) a(k, k) = std::polar(1.0, 2 * kPi * k / 12);
  const DominanceReport r = schur_inner_radius_check(a, 2, 5, 0.2, 300, rng);
  return {"a52", "", r.holds, dominance_json(r)};
}

SuiteResult corner(RngStream rng) {
  const CornerReport r = corner_smin_check(10, 3, 0.5, 5000, rng);
  json d = dominance_json(r.usage);
  d["literal_p"] = r.literal_p;
  d["literal_holds"] = r.literal_holds;
  return {"a53", "", r.usage.holds, d};
}

SuiteResult estimators(RngStream rng) {
  const CMatrix a = ginibre(rng, 6);
  const double eps = 0.05;
  const ExpectedArea e = expected_area_mc(a, 2, eps, 60, {}, rng.substream(1));
  const MeanEstimate p = expected_area_by_probability(a, 2, eps, 200, 500, rng.substream(2));
  const double mid = 0.5 * (e.mean_lo + e.mean_hi);
  const double allowed = std::hypot(e.ci, p.half_width) + (e.mean_hi - e.mean_lo);
  return {"a56", "", std::abs(mid - p.mean) <= allowed,
          {{"area_mean_lo", e.mean_lo}, {"area_mean_hi", e.mean_hi}, {"area_ci", e.ci},
           {"probability_mean", p.mean}, {"probability_ci", p.half_width}, {"allowed", allowed}}};
}

SuiteResult growth(RngStream rng) {
  const CMatrix a = ginibre(rng, 10);
  const ConvexRegion w = numerical_range(a, 128);
  const ShiftMinimum s = shifted_min(a, 3, w, 1e-6);
  const auto box = minkowski_eps(w, 0.1).bounding_box();
  int failures = 0;
  for (int j = 0; j < 100; ++j)
    failures += !lemma57_check(a, 3, Complex(draw(rng, box[0], box[1]), draw(rng, box[2], box[3])), s).holds;
  return {"a57", "", failures == 0,
          {{"k", 3}, {"s_k", s.s_k}, {"certificate_gap", s.certificate_gap}, {"points", 100},
           {"failures", failures}}};
}

SuiteResult area_bounds(RngStream rng) {
  const CMatrix a = ginibre(rng, 20);
  const int ell = 2;
  const double eps = 1e-2;
  const TheoremBounds t =
      theorem_bounds(a, ell, eps, BoundConstants::traced(20, ell), area_geometry(a, ell, eps));
  const ExpectedArea e = expected_area_mc(a, ell, eps, 20, {}, rng.substream(1));
  const double best = t.best();
  return {"a2", "", e.mean_hi + e.ci <= best,
          {{"ell", ell}, {"eps", eps}, {"mean_hi", e.mean_hi}, {"ci", e.ci}, {"best_bound", best},
           {"items", t.items}, {"lemma54", t.lemma54}}};
}

struct Suite {
  SuiteInfo info;
  std::uint64_t stream;
  std::function<SuiteResult(RngStream)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {{"haar", "haar", "Haar frames: orthonormality and first-coordinate law"}, 1, haar},
      {{"a7", "reduction", "compression tail vs nested Schur-complement small ball"}, 2, reduction},
      {{"a17", "net", "operator norm from the polarization net"}, 3, net},
      {{"a22", "spline-integral", "B-spline integral and range"}, 4, spline_integral},
      {{"a24", "spline-law", "law of q*Hq against the spline CDF"}, 5, spline_law},
      {{"a25", "first-order-tail", "sigma_min tail vs first-order bound"}, 6, first_order_tail},
      {{"a35", "concavity", "second-derivative floor of the spline density"}, 7, concavity},
      {{"a36", "hilbert-bound", "Hilbert transform of the density derivative"}, 8, hilbert_bound},
      {{"a41", "density-small-ball", "small-ball mass vs density sup bound"}, 9, density_small_ball},
      {{"a42", "regularized-gap", "inner gap of regularized Hermitian parts"}, 10, regularized_gap},
      {{"a44", "l1-factor", "angle integral of 1/(w1 w2) vs its bound"}, 11, l1_factor},
      {{"a45", "clipped-cosine", "clipped cosine integral vs closed form"}, 12, clipped_cosine},
      {{"a46", "cone", "quadratic form along a segment"}, 13, cone},
      {{"a47", "phi-witness", "2x2 compression functional vs geometry"}, 14, phi},
      {{"a49", "compression-area", "area of random 2k-compressions"}, 15, compression_area},
      {{"a52", "schur-inradius", "inner radius of random Schur complements"}, 16, schur_inradius},
      {{"a53", "haar-corner", "smallest singular value of a Haar corner"}, 17, corner},
      {{"a56", "estimators", "area-based vs probability-based expected area"}, 18, estimators},
      {{"a57", "growth", "growth of sigma_k away from its minimizer"}, 19, growth},
      {{"a2", "area-bounds", "expected area vs closed-form bounds"}, 20, area_bounds},
  };
  return all;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const Suite& s : suites()) out.push_back(s.info);
    return out;
  }();
  return infos;
}

std::vector<SuiteResult> run_suites(const std::string& selection, std::uint64_t seed) {
  std::vector<const Suite*> chosen;
  for (const Suite& s : suites())
    if (selection == "all" || selection == s.info.id || selection == s.info.name) chosen.push_back(&s);
  if (chosen.empty()) throw UsageError("unknown suite '" + selection + "'");

  std::vector<SuiteResult> results;
  for (const Suite* s : chosen) {
    SuiteResult r;
    try {
      r = s->run(RngStream(seed, 0x76657269'00000000ULL + s->stream));
    } catch (const std::exception& e) {
      r.pass = false;
      r.details = {{"error", e.what()}};
    }
    r.id = s->info.id;
    r.name = s->info.name;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace psc::cli
