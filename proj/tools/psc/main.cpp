#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "output.hpp"
#include "psc/bspline.hpp"
#include "psc/matrix_io.hpp"
#include "psc/numerical_measure.hpp"
#include "psc/numrange.hpp"
#include "psc/pseudospectrum.hpp"
#include "psc/tail_bounds.hpp"
#include "verify.hpp"

using namespace psc;
using namespace psc::cli;

namespace {

// Exit codes.
constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kInput = 3, kRuntime = 4;

Complex parse_point(const std::string& text) {
  const std::vector<double> v = parse_double_list(text, "z");
  if (v.size() != 2) throw UsageError("z must be re,im");
  return {v[0], v[1]};
}

CMatrix require_matrix(const ExperimentConfig& c) {
  if (c.matrix.empty()) throw UsageError("--matrix is required");
  try {
    return load_matrix(c.matrix);
  } catch (const GeneratorError& e) {
    throw UsageError(e.what());
  }
}

void require_eps(const ExperimentConfig& c) {
  if (c.eps.empty()) throw UsageError("--eps is required");
  for (double e : c.eps)
    if (!(e > 0)) throw UsageError("eps values must be positive");
}

int run_density(const ExperimentConfig& c, ArtifactSink& sink, bool svg) {
  if (!c.hermitian.empty()) {
    std::vector<double> ev = parse_double_list(c.hermitian, "hermitian");
    const SplineDensity s = hermitian_form_spline(ev);
    std::ostream& out = *sink.open("density.csv", true);
    write_comment_header(out, c);
    out << "t,rho\n";
    const auto [mn, mx] = std::minmax_element(ev.begin(), ev.end());
    const double pad = 0.1 * std::max(*mx - *mn, 1e-12);
    const int points = std::max(c.points, 2);
    for (int i = 0; i < points; ++i) {
      const double t = *mn - pad + (*mx - *mn + 2 * pad) * i / (points - 1);
      out << fmt(t) << ',' << fmt(s.point_mass() ? 0.0 : s.density_at(t)) << '\n';
    }
    return kOk;
  }
  const CMatrix m = require_matrix(c);
  std::array<double, 4> box{};
  int nx = 64, ny = 64;
  if (c.grid.empty()) {
    box = numerical_range(m, 128).bounding_box();
  } else {
    const std::vector<double> g = parse_double_list(c.grid, "grid");
    if (g.size() != 6) throw UsageError("grid must be x0,x1,y0,y1,nx,ny");
    box = {g[0], g[1], g[2], g[3]};
    nx = static_cast<int>(g[4]);
    ny = static_cast<int>(g[5]);
    if (nx < 1 || ny < 1 || !(box[1] > box[0]) || !(box[3] > box[2]))
      throw UsageError("grid needs x0 < x1, y0 < y1 and positive counts");
  }
  const DensityGrid grid = density_field(m, box, nx, ny, c.ktheta);
  std::ostream& out = *sink.open("density.csv", true);
  write_comment_header(out, c);
  out << "re,im,rho,gap\n";
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Complex z = grid.center(i, j);
      const std::size_t k = std::size_t(j) * nx + i;
      out << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(grid.values[k]) << ','
          << fmt(grid.gaps[k]) << '\n';
    }
  if (svg)
    if (std::ostream* s = sink.open("density.svg", false)) *s << svg_heatmap(c, box, nx, ny, grid.values);
  return kOk;
}

int run_smallball(const ExperimentConfig& c, ArtifactSink& sink) {
  const CMatrix m = require_matrix(c);
  require_eps(c);
  const Complex z0 = parse_point(c.z);
  std::ostream& out = *sink.open("smallball.csv", true);
  write_comment_header(out, c);
  out << "eps,p_hat,ci_upper,bound,holds\n";
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    const SmallBallEstimate e = small_ball_empirical(m, c.eps[i], z0, c.samples, RngStream(c.seed, i));
    const double bound = small_ball_bound(m, c.eps[i]);
    out << fmt(c.eps[i]) << ',' << fmt(e.p_hat) << ',' << fmt(e.ci_upper) << ',' << fmt(bound) << ','
        << (e.ci_upper <= bound ? "true" : "false") << '\n';
  }
  return kOk;
}

int run_tail(const ExperimentConfig& c, ArtifactSink& sink) {
  const CMatrix m = require_matrix(c);
  require_eps(c);
  std::vector<double> grid = c.eps;
  std::sort(grid.begin(), grid.end());
  const TailCurve t = smin_tail_empirical(m, c.ell, parse_point(c.z), grid, c.samples, RngStream(c.seed, 0));
  std::ostream& out = *sink.open("tail.csv", true);
  write_comment_header(out, c);
  out << "eps,p_hat,ci_upper,first_order,second_order\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << fmt(grid[i]) << ',' << fmt(t.p_hat[i]) << ',' << fmt(t.ci_upper[i]) << ','
        << fmt(t.first_order[i]) << ',' << fmt(t.second_order[i]) << '\n';
  return kOk;
}

int run_numrange(const ExperimentConfig& c, ArtifactSink& sink, bool svg) {
  const CMatrix m = require_matrix(c);
  if (c.angles < 8) throw UsageError("--angles must be at least 8");
  const ConvexRegion w = numerical_range(m, c.angles);
  std::ostream& out = *sink.open("numrange.csv", true);
  write_comment_header(out, c);
  out << "theta,h,touch_re,touch_im\n";
  for (std::size_t i = 0; i < w.angles.size(); ++i)
    out << fmt(w.angles[i]) << ',' << fmt(w.support[i]) << ',' << fmt(w.touch[i].real()) << ','
        << fmt(w.touch[i].imag()) << '\n';
  if (svg)
    if (std::ostream* s = sink.open("numrange.svg", false))
      *s << svg_polygons(c, w.outer.vertices, w.inner.vertices);
  return kOk;
}

RegimeFlags parse_flags(const std::string& text) {
  RegimeFlags f;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "a") f.bounded = true;
    else if (tok == "b") f.fat = true;
    else if (tok == "c") f.well_separated = true;
    else if (!tok.empty()) throw UsageError("flags are a subset of a,b,c");
  }
  return f;
}

int run_psarea(const ExperimentConfig& c, ArtifactSink& sink) {
  const CMatrix a = require_matrix(c);
  require_eps(c);
  if (a.rows() != a.cols()) throw UsageError("psarea needs a square matrix");
  if (c.ell < 1 || c.ell > a.rows()) throw UsageError("--ell must lie in [1, n]");
  const RegimeFlags flags = parse_flags(c.flags);
  const BoundConstants consts = BoundConstants::traced(a.rows(), c.ell);
  AreaOptions opt;
  opt.resolution = c.resolution;

  std::ostream& out = *sink.open("psarea.csv", true);
  write_comment_header(out, c);
  out << "eps,mean_lo,mean_hi,ci,bound1,bound2,bound3,bound4,bound5,lemma54,beta\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const AreaGeometry shifts = area_geometry(a, c.ell, c.eps.front());
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    const double eps = c.eps[i];
    const AreaGeometry g = area_geometry(a, eps, shifts);
    const TheoremBounds t = theorem_bounds(a, c.ell, eps, consts, g);
    const ExpectedArea e = expected_area_mc(a, c.ell, eps, c.samples, opt, RngStream(c.seed, i));
    std::string beta;
    if (!c.flags.empty()) {
      try {
        if (const auto r = regime_exponent(flags, g, a.rows(), c.ell)) beta = fmt(r->beta);
      } catch (const DimensionError&) {
        // Outside the dimension range of the regime table: left blank.
      }
    }
    out << fmt(eps) << ',' << fmt(e.mean_lo) << ',' << fmt(e.mean_hi) << ',' << fmt(e.ci);
    for (int k = 0; k < 5; ++k) out << ',' << fmt(t.applicable[k] ? t.items[k] : INFINITY);
    out << ',' << fmt(t.lemma54_applicable ? t.lemma54 : INFINITY) << ',' << beta << '\n';
    const double best = t.best();
    rows.push_back({{"eps", eps},
                    {"mean_hi_plus_ci", e.mean_hi + e.ci},
                    {"best_bound", fmt(best)},
                    {"vacuous", !std::isfinite(best)},
                    {"holds", e.mean_hi + e.ci <= best}});
  }
  if (std::ostream* js = sink.open("psarea.json", false)) {
    nlohmann::ordered_json j = {{"header", json_header(c)}, {"rows", rows}};
    *js << j.dump(2) << '\n';
  }
  return kOk;
}

int run_verify(const ExperimentConfig& c, ArtifactSink& sink) {
  const std::vector<SuiteResult> results = run_suites(c.suite, c.seed);
  nlohmann::ordered_json suites = nlohmann::ordered_json::object();
  bool all = true;
  for (const SuiteResult& r : results) {
    suites[r.id] = {{"name", r.name}, {"verdict", r.pass ? "pass" : "fail"}, {"details", r.details}};
    all = all && r.pass;
  }
  nlohmann::ordered_json j = {{"header", json_header(c)}, {"pass", all}, {"suites", suites}};
  *sink.open("verify.json", true) << j.dump(2) << '\n';
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectra of random compressions: experiments and verification"};
  app.set_version_flag("--version", std::string(PSC_VERSION_STRING));
  std::string config_path, out_dir;
  app.add_option("--config", config_path, "key=value config file or an emitted artifact");
  app.add_option("--out", out_dir, "write artifacts into this directory instead of stdout");
  app.require_subcommand(0, 1);

  // Flags that override the config file, keyed by config name.
  std::map<std::string, std::string> given;
  bool svg = false;
  const std::map<std::string, std::string> help = {
      {"matrix", "matrix file or generator (jordan:n, ginibre:n:seed, diag:z1,z2,..., haar-unitary:n:seed)"},
      {"ell", "number of removed dimensions l"},
      {"eps", "comma-separated eps values"},
      {"samples", "Monte Carlo frames per eps"},
      {"seed", "RNG seed"},
      {"z", "shift point as re,im"},
      {"resolution", "base cells per side of the area quadtree (>= 64)"},
      {"flags", "regime flags, a subset of a,b,c"}};
  auto opt = [&](CLI::App* sub, const std::string& key, const std::string& text) {
    sub->add_option("--" + key, given[key], text.empty() ? help.at(key) : text);
  };
  std::vector<CLI::App*> subs;
  auto add_sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.push_back(s);
    return s;
  };

  CLI::App* density = add_sub("density", "density of the numerical measure (grid or Hermitian)");
  opt(density, "matrix", "");
  opt(density, "grid", "x0,x1,y0,y1,nx,ny");
  opt(density, "ktheta", "angles in the inversion quadrature");
  opt(density, "hermitian", "eigenvalue list; emits (t, rho(t))");
  opt(density, "points", "number of t values for --hermitian");
  density->add_flag("--svg", svg, "also write density.svg (needs --out)");

  CLI::App* smallball = add_sub("smallball", "small-ball probability vs bound");
  for (auto k : {"matrix", "eps", "samples", "seed", "z"}) opt(smallball, k, "");

  CLI::App* tail = add_sub("tail", "tail of sigma_min of random compressions");
  for (auto k : {"matrix", "ell", "z", "eps", "samples", "seed"}) opt(tail, k, "");

  CLI::App* numrange = add_sub("numrange", "numerical range polygons");
  opt(numrange, "matrix", "");
  opt(numrange, "angles", "support samples");
  numrange->add_flag("--svg", svg, "also write numrange.svg (needs --out)");

  CLI::App* psarea = add_sub("psarea", "expected pseudospectral area vs bounds");
  for (auto k : {"matrix", "ell", "eps", "samples", "resolution", "seed", "flags"}) opt(psarea, k, "");

  CLI::App* verify = add_sub("verify", "run property suites; exit 1 if any fails");
  opt(verify, "suite", "all, a suite id (a17, ...) or its name");
  opt(verify, "seed", "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    ExperimentConfig config;
    if (!config_path.empty()) config = apply_pairs(config, read_config_file(config_path));
    std::map<std::string, std::string> overrides;
    for (CLI::App* s : subs)
      if (s->parsed()) {
        overrides["command"] = s->get_name();
        for (const auto& [key, value] : given)
          if (s->get_option_no_throw("--" + key) && s->get_option("--" + key)->count() > 0)
            overrides[key] = value;
      }
    config = apply_pairs(config, overrides);
    if (config.command.empty()) throw UsageError("no subcommand given (and none in --config)");

    ArtifactSink sink(out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir));
    if (config.command == "density") return run_density(config, sink, svg);
    if (config.command == "smallball") return run_smallball(config, sink);
    if (config.command == "tail") return run_tail(config, sink);
    if (config.command == "numrange") return run_numrange(config, sink, svg);
    if (config.command == "psarea") return run_psarea(config, sink);
    if (config.command == "verify") return run_verify(config, sink);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const MatrixParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}
