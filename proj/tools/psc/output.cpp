#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace psc::cli {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_comment_header(std::ostream& out, const ExperimentConfig& config) {
  out << "# psc version " << PSC_VERSION_STRING << '\n';
  for (const std::string& line : config.to_lines()) out << "# " << line << '\n';
}

nlohmann::ordered_json json_header(const ExperimentConfig& config) {
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const std::string& line : config.to_lines()) {
    const auto eq = line.find('=');
    cfg[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return {{"version", PSC_VERSION_STRING}, {"config", cfg}};
}

namespace {

void svg_open(std::ostream& out, const ExperimentConfig& config, double width, double height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
  write_comment_header(out, config);
  out << "-->\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
}

}  // namespace

std::string svg_polygons(const ExperimentConfig& config,
                         const std::vector<std::complex<double>>& outer,
                         const std::vector<std::complex<double>>& inner) {
  const double size = 480.0, pad = 20.0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto* poly : {&outer, &inner})
    for (const auto& v : *poly) {
      if (first) x0 = x1 = v.real(), y0 = y1 = v.imag(), first = false;
      x0 = std::min(x0, v.real()), x1 = std::max(x1, v.real());
      y0 = std::min(y0, v.imag()), y1 = std::max(y1, v.imag());
    }
  const double span = std::max({x1 - x0, y1 - y0, 1e-300});
  auto points = [&](const std::vector<std::complex<double>>& poly) {
    std::ostringstream s;
    for (const auto& v : poly) {
      const double px = pad + (v.real() - x0) / span * (size - 2 * pad);
      const double py = size - pad - (v.imag() - y0) / span * (size - 2 * pad);
      s << fmt(px) << ',' << fmt(py) << ' ';
    }
    return s.str();
  };
  std::ostringstream out;
  svg_open(out, config, size, size);
  out << "<polygon points=\"" << points(inner) << "\" fill=\"#9ecae1\" stroke=\"none\"/>\n";
  out << "<polygon points=\"" << points(outer)
      << "\" fill=\"none\" stroke=\"#08519c\" stroke-dasharray=\"4 2\"/>\n</svg>\n";
  return out.str();
}

std::string svg_heatmap(const ExperimentConfig& config, const std::array<double, 4>& box, int nx,
                        int ny, const std::vector<double>& values) {
  const double cell = std::max(1.0, 480.0 / std::max(nx, ny));
  const double top = *std::max_element(values.begin(), values.end());
  std::ostringstream out;
  svg_open(out, config, cell * nx, cell * ny);
  out << "<!-- box " << fmt(box[0]) << ' ' << fmt(box[1]) << ' ' << fmt(box[2]) << ' '
      << fmt(box[3]) << " -->\n";
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = top > 0 ? values[std::size_t(j) * nx + i] / top : 0.0;
      const int g = 255 - static_cast<int>(std::clamp(v, 0.0, 1.0) * 255.0);
      out << "<rect x=\"" << i * cell << "\" y=\"" << (ny - 1 - j) * cell << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  out << "</svg>\n";
  return out.str();
}

ArtifactSink::ArtifactSink(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::ostream* ArtifactSink::open(const std::string& name, bool primary) {
  if (!dir_) return primary ? &std::cout : nullptr;
  auto file = std::make_unique<std::ofstream>(*dir_ / name, std::ios::binary);
  if (!*file) throw std::runtime_error("cannot write " + (*dir_ / name).string());
  files_.push_back(std::move(file));
  return files_.back().get();
}

}  // namespace psc::cli
